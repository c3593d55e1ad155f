//! Pure and mixed states with exact cyclotomic amplitudes, and the amplitude
//! file format.
//!
//! ```text
//! # comments start with '#'
//! cyclotomic m=3 dim=9
//! 0: 1/3
//! 1: 1/3
//! 4: 0,1/3        # (1/3)·ζ₃
//! 8: 0,0,1/3      # (1/3)·ζ₃²
//! ```
//!
//! Each line gives coefficients `c0,c1,…` of `Σ c_k ζ_m^k`; omitted indices
//! are zero.

use std::fmt::Write;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::matrix::{inner, CMatrix};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Amplitudes in `ℚ(ζ_m)`; need not be normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    amps: Vec<Cyclotomic>,
}

impl StateVector {
    pub fn new(amps: Vec<Cyclotomic>) -> Result<Self> {
        if amps.is_empty() || amps.iter().all(Cyclotomic::is_zero) {
            return Err(Error::domain("state vector is identically zero"));
        }
        let m = amps[0].order();
        if amps.iter().any(|a| a.order() != m) {
            return Err(Error::domain("amplitudes from different cyclotomic fields"));
        }
        Ok(StateVector { amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(field: &Arc<CyclotomicField>, dim: usize, index: usize) -> Self {
        let mut amps = vec![Cyclotomic::zero(field); dim];
        amps[index] = Cyclotomic::one(field);
        StateVector { amps }
    }

    pub fn amplitudes(&self) -> &[Cyclotomic] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.amps[0].field()
    }

    /// `⟨ψ|ψ⟩`, a nonnegative real element of the field.
    pub fn norm_squared(&self) -> Cyclotomic {
        inner(&self.amps, &self.amps)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, a: &CMatrix) -> Cyclotomic {
        inner(&self.amps, &a.apply(&self.amps))
    }

    pub fn embed(&self, field: &Arc<CyclotomicField>) -> Result<Self> {
        Ok(StateVector {
            amps: self.amps.iter().map(|a| a.embed(field)).collect::<Result<_>>()?,
        })
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a.mul_ref(b));
            }
        }
        StateVector { amps }
    }

    pub fn parse_amplitude_file(text: &str) -> Result<Self> {
        let mut header: Option<(Arc<CyclotomicField>, usize)> = None;
        let mut amps: Vec<Cyclotomic> = Vec::new();
        let mut seen = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::parse(format!("amplitude file line {}: {what}", lineno + 1));
            match &header {
                None => {
                    let mut parts = line.split_whitespace();
                    if parts.next() != Some("cyclotomic") {
                        return Err(bad("expected header `cyclotomic m=<order> dim=<n>`"));
                    }
                    let (mut m, mut dim) = (None, None);
                    for kv in parts {
                        match kv.split_once('=') {
                            Some(("m", v)) => m = v.parse::<usize>().ok(),
                            Some(("dim", v)) => dim = v.parse::<usize>().ok(),
                            _ => return Err(bad("unknown header field")),
                        }
                    }
                    let (m, dim) = m.zip(dim).ok_or_else(|| bad("header needs m and dim"))?;
                    if dim == 0 {
                        return Err(bad("dim must be positive"));
                    }
                    let field = CyclotomicField::get(m)?;
                    amps = vec![Cyclotomic::zero(&field); dim];
                    seen = vec![false; dim];
                    header = Some((field, dim));
                }
                Some((field, dim)) => {
                    let (idx, coeffs) = line.split_once(':').ok_or_else(|| bad("expected `index: c0,c1,…`"))?;
                    let idx: usize = idx.trim().parse().map_err(|_| bad("bad index"))?;
                    if idx >= *dim {
                        return Err(bad("index out of range"));
                    }
                    if seen[idx] {
                        return Err(bad("index given twice"));
                    }
                    seen[idx] = true;
                    let coeffs: Vec<Rational> = coeffs
                        .split(',')
                        .map(|c| rational::parse(c).map_err(|_| bad("bad coefficient")))
                        .collect::<Result<_>>()?;
                    if coeffs.len() > field.order() {
                        return Err(bad("more coefficients than the field order"));
                    }
                    amps[idx] = Cyclotomic::from_power_coeffs(field, &coeffs);
                }
            }
        }
        if header.is_none() {
            return Err(Error::parse("amplitude file has no header"));
        }
        StateVector::new(amps)
    }

    /// Writes the amplitude file form, coefficients over the reduced power basis.
    pub fn to_amplitude_file(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cyclotomic m={} dim={}", self.field().order(), self.dim());
        for (i, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut coeffs: Vec<String> = a.coeffs().iter().map(rational::to_string).collect();
            while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c == "0/1") {
                coeffs.pop();
            }
            let _ = writeln!(out, "{i}: {}", coeffs.join(","));
        }
        out
    }
}

/// A pure state or a finite rational mixture of pure states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantumState {
    Pure(StateVector),
    Mixed(Vec<(Rational, StateVector)>),
}

impl QuantumState {
    /// Uniform mixture of the computational basis, i.e. `I / dim`.
    pub fn maximally_mixed(field: &Arc<CyclotomicField>, dim: usize) -> Self {
        let w = Rational::new(1.into(), (dim as i64).into());
        QuantumState::Mixed(
            (0..dim)
                .map(|i| (w.clone(), StateVector::basis(field, dim, i)))
                .collect(),
        )
    }

    pub fn mixture(components: Vec<(Rational, StateVector)>) -> Result<Self> {
        let total: Rational = components.iter().map(|(w, _)| w.clone()).sum();
        if !total.is_one() || components.iter().any(|(w, _)| !rational::is_probability(w)) {
            return Err(Error::domain("mixture weights must be probabilities summing to 1"));
        }
        Ok(QuantumState::Mixed(components))
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(v) => v.dim(),
            QuantumState::Mixed(c) => c.first().map_or(0, |(_, v)| v.dim()),
        }
    }

    pub fn components(&self) -> Vec<(Rational, &StateVector)> {
        match self {
            QuantumState::Pure(v) => vec![(Rational::one(), v)],
            QuantumState::Mixed(c) => c.iter().map(|(w, v)| (w.clone(), v)).collect(),
        }
    }

    pub fn embed(&self, field: &Arc<CyclotomicField>) -> Result<Self> {
        Ok(match self {
            QuantumState::Pure(v) => QuantumState::Pure(v.embed(field)?),
            QuantumState::Mixed(c) => QuantumState::Mixed(
                c.iter()
                    .map(|(w, v)| Ok((w.clone(), v.embed(field)?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

/// Born weight of a projector: exact probability when it is rational, plus
/// an exact possibility flag that is valid either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BornWeight {
    pub probability: Option<Rational>,
    pub possible: bool,
}

impl BornWeight {
    pub fn impossible() -> Self {
        BornWeight {
            probability: Some(Rational::zero()),
            possible: false,
        }
    }
}

/// `Σ_i w_i ⟨ψ_i|P|ψ_i⟩/⟨ψ_i|ψ_i⟩`.
pub fn born_weight(state: &QuantumState, projector: &CMatrix) -> BornWeight {
    let mut prob = Some(Rational::zero());
    let mut possible = false;
    for (w, v) in state.components() {
        if w.is_zero() {
            continue;
        }
        let num = v.expectation(projector);
        if !num.is_zero() {
            possible = true;
        }
        let term = num
            .to_rational()
            .zip(v.norm_squared().to_rational())
            .map(|(a, b)| a / b * &w);
        prob = prob.zip(term).map(|(p, t)| p + t);
    }
    BornWeight {
        probability: prob,
        possible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn amplitude_file_round_trip() {
        let text = "# test\ncyclotomic m=3 dim=3\n0: 1/3\n2: 0,1/3\n";
        let v = StateVector::parse_amplitude_file(text).unwrap();
        let f = CyclotomicField::get(3).unwrap();
        assert_eq!(v.amplitudes()[2], Cyclotomic::root_of_unity(&f, 1).scale(&frac(1, 3)));
        assert!(v.amplitudes()[1].is_zero());
        let again = StateVector::parse_amplitude_file(&v.to_amplitude_file()).unwrap();
        assert_eq!(again, v);
        assert_eq!(v.norm_squared().to_rational(), Some(frac(2, 9)));
    }

    #[test]
    fn amplitude_file_errors() {
        assert!(StateVector::parse_amplitude_file("0: 1\n").is_err());
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3\n").is_err());
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3 dim=2\n5: 1\n").is_err());
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3 dim=2\n0: 1\n0: 1\n").is_err());
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3 dim=2\n0: x\n").is_err());
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3 dim=2\n0: 1,1,1,1\n").is_err());
        // 1 + ω + ω² = 0: an all-zero vector.
        assert!(StateVector::parse_amplitude_file("cyclotomic m=3 dim=1\n0: 1,1,1\n").is_err());
    }

    #[test]
    fn mixture_weights_validated() {
        let f = CyclotomicField::get(4).unwrap();
        let v = StateVector::basis(&f, 2, 0);
        assert!(QuantumState::mixture(vec![(frac(1, 2), v.clone())]).is_err());
        assert!(QuantumState::mixture(vec![(int(1), v)]).is_ok());
    }
}
