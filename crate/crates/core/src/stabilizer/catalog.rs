//! Named models and states.

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::phase::PhasePoint;
use super::scenario::{quantum_empirical_model, StabilizerScenario};
use super::state::{QuantumState, StateVector};
use super::weyl::WeylBasis;
use crate::error::{Error, Result};
use crate::rational::{frac, Rational};
use crate::scenario::{bell_scenario, EmpiricalModel};

pub const CATALOG_NAMES: [&str; 5] = ["bell_table", "pr_box", "hardy", "ghz", "cs_state"];

#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Model(EmpiricalModel),
    State(StateVector),
}

impl CatalogEntry {
    /// The model itself, or the Born-rule model of the state on its
    /// Lagrangian scenario (`n`, `d` read off the dimension).
    pub fn into_model(self) -> Result<EmpiricalModel> {
        match self {
            CatalogEntry::Model(m) => Ok(m),
            CatalogEntry::State(v) => {
                let (n, d) = qudits_of_dimension(v.dim())?;
                quantum_empirical_model(&QuantumState::Pure(v), n, d)
            }
        }
    }
}

/// `(n, d)` with `d` prime and `d^n = dim`.
pub fn qudits_of_dimension(dim: usize) -> Result<(usize, u32)> {
    let d = (2..=dim).find(|k| dim.is_multiple_of(*k)).ok_or_else(|| {
        Error::domain(format!("dimension {dim} is not a prime power"))
    })?;
    let (mut rest, mut n) = (dim, 0);
    while rest % d == 0 {
        rest /= d;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::domain(format!("dimension {dim} is not a prime power")));
    }
    Ok((n, d as u32))
}

fn rows(r: &[[i64; 4]], den: i64) -> Vec<Vec<Rational>> {
    r.iter().map(|row| row.iter().map(|&x| frac(x, den)).collect()).collect()
}

pub fn bell_table() -> EmpiricalModel {
    let t = rows(&[[4, 0, 0, 4], [3, 1, 1, 3], [3, 1, 1, 3], [1, 3, 3, 1]], 8);
    EmpiricalModel::new(bell_scenario(), t).expect("valid table")
}

pub fn pr_box() -> EmpiricalModel {
    let t = rows(&[[1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], 2);
    EmpiricalModel::new(bell_scenario(), t).expect("valid table")
}

/// Hardy's possibilistic pattern with rational probabilities: `A0B1:00`,
/// `A1B0:00` and `A1B1:11` are impossible while `A0B0:00` is possible.
pub fn hardy() -> EmpiricalModel {
    let t = rows(&[[1, 1, 1, 5], [0, 2, 5, 1], [0, 5, 2, 1], [2, 3, 3, 0]], 8);
    EmpiricalModel::new(bell_scenario(), t).expect("valid table")
}

/// Three qubits, each measured in `X` or `Y`: all 8 setting combinations.
pub fn ghz_scenario() -> Result<StabilizerScenario> {
    let weyl = WeylBasis::new(3, 2, 4)?;
    let mut measurements = Vec::new();
    for party in 0..3 {
        for (name, p, q) in [("X", 0, 1), ("Y", 1, 1)] {
            let mut coords = vec![0u32; 6];
            coords[party] = p;
            coords[3 + party] = q;
            measurements.push((format!("{name}{}", party + 1), PhasePoint::new(coords, 2)));
        }
    }
    let contexts = (0..8usize)
        .map(|s| (0..3).map(|party| 2 * party + (s >> (2 - party) & 1)).collect())
        .collect();
    StabilizerScenario::custom(weyl, measurements, contexts)
}

/// `(|000⟩ + |111⟩)/√2`, unnormalized.
pub fn ghz_state() -> StateVector {
    let f = CyclotomicField::get(4).expect("field");
    let mut amps = vec![Cyclotomic::zero(&f); 8];
    amps[0] = Cyclotomic::one(&f);
    amps[7] = Cyclotomic::one(&f);
    StateVector::new(amps).expect("nonzero")
}

pub fn ghz() -> Result<EmpiricalModel> {
    ghz_scenario()?.quantum_empirical_model(&QuantumState::Pure(ghz_state()))
}

/// `|CS⟩ = (1/3) Σ_{j,k} ω^{jk²} |j⟩⊗|k⟩`, `ω = e^{2πi/3}`, basis index `3j + k`.
pub fn cs_state() -> StateVector {
    let f = CyclotomicField::get(3).expect("field");
    let amps = (0..3i64)
        .flat_map(|j| (0..3i64).map(move |k| (j, k)))
        .map(|(j, k)| Cyclotomic::root_of_unity(&f, j * k * k).scale(&frac(1, 3)))
        .collect();
    StateVector::new(amps).expect("nonzero")
}

/// `name` is one of [`CATALOG_NAMES`] or `file:PATH` for an amplitude file.
pub fn catalog_state(name: &str) -> Result<CatalogEntry> {
    if let Some(path) = name.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        return Ok(CatalogEntry::State(StateVector::parse_amplitude_file(&text)?));
    }
    Ok(match name {
        "bell_table" => CatalogEntry::Model(bell_table()),
        "pr_box" => CatalogEntry::Model(pr_box()),
        "hardy" => CatalogEntry::Model(hardy()),
        "ghz" => CatalogEntry::Model(ghz()?),
        "cs_state" => CatalogEntry::State(cs_state()),
        _ => {
            return Err(Error::domain(format!(
                "unknown catalog entry {name:?}; expected one of {} or file:PATH",
                CATALOG_NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::scenario::ObservableEvent;
    use num_traits::Zero;

    #[test]
    fn tables_are_nonsignalling() {
        for m in [bell_table(), pr_box(), hardy()] {
            assert!(m.is_nonsignalling());
        }
        assert_eq!(bell_table().tables()[0], vec![frac(1, 2), int(0), int(0), frac(1, 2)]);
    }

    #[test]
    fn hardy_pattern() {
        let h = hardy();
        let p = |c, o: [u32; 2]| h.prob(&ObservableEvent { context: c, outcomes: o.to_vec() }).clone();
        assert!(!p(0, [0, 0]).is_zero());
        assert!(p(1, [0, 0]).is_zero());
        assert!(p(2, [0, 0]).is_zero());
        assert!(p(3, [1, 1]).is_zero());
    }

    #[test]
    fn ghz_perfect_correlations() {
        let m = ghz().unwrap();
        assert_eq!(m.scenario().num_contexts(), 8);
        assert!(m.is_nonsignalling());
        // XXX has eigenvalue +1 on GHZ: only even-parity outcomes occur.
        for (i, p) in m.tables()[0].iter().enumerate() {
            let odd = (i as u32).count_ones() % 2 == 1;
            assert_eq!(p.is_zero(), odd);
        }
    }

    #[test]
    fn cs_amplitudes() {
        let v = cs_state();
        let f = v.field().clone();
        assert_eq!(v.amplitudes()[3 * 2 + 2], Cyclotomic::root_of_unity(&f, 8).scale(&frac(1, 3)));
        assert_eq!(v.norm_squared().to_rational(), Some(int(1)));
    }

    #[test]
    fn dimensions() {
        assert_eq!(qudits_of_dimension(9).unwrap(), (2, 3));
        assert_eq!(qudits_of_dimension(8).unwrap(), (3, 2));
        assert!(qudits_of_dimension(6).is_err());
        assert!(catalog_state("nope").is_err());
    }
}
