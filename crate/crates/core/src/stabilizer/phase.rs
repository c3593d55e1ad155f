//! The discrete phase space `(Z_d)^{2n}` with its symplectic form, and
//! enumeration of Lagrangian subspaces.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest `d^{2n}` for which phase-space enumeration is attempted.
pub const PHASE_SPACE_CAP: u64 = 1 << 16;

pub fn is_prime(d: u32) -> bool {
    d >= 2 && (2..).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo the prime `d`.
pub fn inv_mod(a: u32, d: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(d));
    pow_mod(a as u64, d as u64 - 2, d as u64) as u32
}

/// A point `(p_1, …, p_n | q_1, …, q_n)`; entries reduced mod `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    coords: Vec<u32>,
}

impl PhasePoint {
    pub fn new(coords: Vec<u32>, d: u32) -> Self {
        debug_assert!(coords.len().is_multiple_of(2));
        PhasePoint {
            coords: coords.into_iter().map(|c| c % d).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        PhasePoint {
            coords: vec![0; 2 * n],
        }
    }

    /// The `r`-th point in lexicographic order.
    pub fn from_rank(mut r: u64, n: usize, d: u32) -> Self {
        let mut coords = vec![0u32; 2 * n];
        for c in coords.iter_mut().rev() {
            *c = (r % d as u64) as u32;
            r /= d as u64;
        }
        PhasePoint { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn num_qudits(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn p(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn q(&self, i: usize) -> u32 {
        self.coords[self.num_qudits() + i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &PhasePoint, d: u32) -> PhasePoint {
        PhasePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % d)
                .collect(),
        }
    }

    pub fn scale(&self, k: u32, d: u32) -> PhasePoint {
        PhasePoint {
            coords: self
                .coords
                .iter()
                .map(|&a| ((a as u64 * k as u64) % d as u64) as u32)
                .collect(),
        }
    }

    /// `[a, b] = Σ_i p_i q'_i − q_i p'_i  (mod d)`.
    pub fn symplectic(&self, other: &PhasePoint, d: u32) -> u32 {
        let n = self.num_qudits();
        let d64 = d as u64;
        let mut acc = 0u64;
        for i in 0..n {
            acc += self.p(i) as u64 * other.q(i) as u64;
            acc += (d64 - self.q(i) as u64 % d64) * other.p(i) as u64;
        }
        (acc % d64) as u32
    }

    /// Representative of the line through the point: first nonzero coordinate
    /// scaled to 1. Points `a` and `λa` name the same measurement.
    pub fn canonical(&self, d: u32) -> PhasePoint {
        match self.coords.iter().find(|&&c| c != 0) {
            None => self.clone(),
            Some(&lead) => self.scale(inv_mod(lead, d), d),
        }
    }

    pub fn is_canonical(&self, d: u32) -> bool {
        !self.is_zero() && self.coords.iter().find(|&&c| c != 0) == Some(&1) && d > 1
    }

    /// Multiplier `λ` with `self = λ · self.canonical()`.
    pub fn scale_from_canonical(&self) -> u32 {
        self.coords.iter().copied().find(|&c| c != 0).unwrap_or(0)
    }

    /// Short label: Pauli word for qubits, `W(p…|q…)` otherwise.
    pub fn label(&self, d: u32) -> String {
        let n = self.num_qudits();
        if d == 2 {
            (0..n)
                .map(|i| match (self.p(i), self.q(i)) {
                    (0, 0) => 'I',
                    (1, 0) => 'Z',
                    (0, 1) => 'X',
                    _ => 'Y',
                })
                .collect()
        } else {
            let sep = if d > 10 { "," } else { "" };
            let join = |xs: Vec<u32>| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(sep);
            format!(
                "W({}|{})",
                join((0..n).map(|i| self.p(i)).collect()),
                join((0..n).map(|i| self.q(i)).collect())
            )
        }
    }
}

impl fmt::Debug for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

pub fn check_phase_space(n: usize, d: u32) -> Result<()> {
    if !is_prime(d) {
        return Err(Error::domain(format!("qudit dimension {d} is not prime")));
    }
    if n == 0 {
        return Err(Error::domain("need at least one qudit"));
    }
    let size = (d as u64).checked_pow(2 * n as u32).unwrap_or(u64::MAX);
    if size > PHASE_SPACE_CAP {
        return Err(Error::CapExceeded {
            what: "phase space size d^(2n)",
            size: size as u128,
            cap: PHASE_SPACE_CAP as u128,
        });
    }
    Ok(())
}

/// All `d^{2n}` phase points in lexicographic order.
pub fn all_points(n: usize, d: u32) -> impl Iterator<Item = PhasePoint> {
    let total = (d as u64).pow(2 * n as u32);
    (0..total).map(move |r| PhasePoint::from_rank(r, n, d))
}

/// Reduced row echelon form of the span of `vectors`, zero rows dropped.
pub fn rref(vectors: &[PhasePoint], d: u32) -> Vec<PhasePoint> {
    let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], d);
        for x in rows[rank].iter_mut() {
            *x = ((*x as u64 * inv as u64) % d as u64) as u32;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] as u64;
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    let sub = f * p as u64 % d as u64;
                    *x = ((*x as u64 + d as u64 - sub) % d as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().map(|coords| PhasePoint { coords }).collect()
}

/// A maximal isotropic subspace of `(Z_d)^{2n}`, stored by its unique
/// reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LagrangianSubspace {
    basis: Vec<PhasePoint>,
    d: u32,
}

impl LagrangianSubspace {
    /// Validates that `generators` span an `n`-dimensional isotropic subspace.
    pub fn new(generators: &[PhasePoint], d: u32) -> Result<Self> {
        let n = generators.first().map_or(0, PhasePoint::num_qudits);
        let basis = rref(generators, d);
        if basis.len() != n {
            return Err(Error::domain(format!(
                "generators span dimension {}, need {n}",
                basis.len()
            )));
        }
        for a in &basis {
            for b in &basis {
                if a.symplectic(b, d) != 0 {
                    return Err(Error::domain("generators are not isotropic"));
                }
            }
        }
        Ok(LagrangianSubspace { basis, d })
    }

    pub fn basis(&self) -> &[PhasePoint] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn qudit_dim(&self) -> u32 {
        self.d
    }

    /// All `d^n` elements, ordered by coefficient tuple.
    pub fn elements(&self) -> Vec<PhasePoint> {
        let n = self.basis.len();
        let d = self.d;
        (0..(d as u64).pow(n as u32))
            .map(|r| {
                let coeffs = PhasePoint::from_rank(r, n, d).coords;
                // from_rank yields 2n coordinates; the last n are the coefficients.
                let coeffs = &coeffs[n..];
                self.basis
                    .iter()
                    .zip(coeffs)
                    .fold(PhasePoint::zero(n), |acc, (b, &c)| acc.add(&b.scale(c, d), d))
            })
            .collect()
    }

    /// Canonical representatives of the `(d^n − 1)/(d − 1)` lines in the subspace.
    pub fn lines(&self) -> Vec<PhasePoint> {
        let set: BTreeSet<PhasePoint> = self
            .elements()
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.canonical(self.d))
            .collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, p: &PhasePoint) -> bool {
        let mut gens = self.basis.clone();
        gens.push(p.clone());
        rref(&gens, self.d).len() == self.basis.len()
    }
}

/// Every Lagrangian subspace of `(Z_d)^{2n}`, sorted by canonical basis.
///
/// Bases are grown one symplectically orthogonal, linearly independent vector
/// at a time; subspaces reached from several bases are merged by their
/// echelon form.
pub fn enumerate_lagrangians(n: usize, d: u32) -> Result<Vec<LagrangianSubspace>> {
    check_phase_space(n, d)?;
    let nonzero: Vec<PhasePoint> = all_points(n, d)
        .filter(|p| !p.is_zero())
        .filter(|p| p.is_canonical(d))
        .collect();
    let mut found: BTreeSet<Vec<PhasePoint>> = BTreeSet::new();
    let mut seen_partial: BTreeSet<Vec<PhasePoint>> = BTreeSet::new();
    let mut stack: Vec<Vec<PhasePoint>> = vec![Vec::new()];
    while let Some(basis) = stack.pop() {
        if basis.len() == n {
            found.insert(basis);
            continue;
        }
        for v in &nonzero {
            if basis.iter().any(|b| b.symplectic(v, d) != 0) {
                continue;
            }
            let mut next = basis.clone();
            next.push(v.clone());
            let reduced = rref(&next, d);
            if reduced.len() == next.len() && seen_partial.insert(reduced.clone()) {
                stack.push(reduced);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|basis| LagrangianSubspace { basis, d })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        for a in 1..7 {
            assert_eq!(a * inv_mod(a, 7) % 7, 1);
        }
    }

    #[test]
    fn symplectic_form_is_alternating() {
        let d = 3;
        for a in all_points(1, d) {
            assert_eq!(a.symplectic(&a, d), 0);
            for b in all_points(1, d) {
                assert_eq!((a.symplectic(&b, d) + b.symplectic(&a, d)) % d, 0);
            }
        }
        let z = PhasePoint::new(vec![1, 0], 3);
        let x = PhasePoint::new(vec![0, 1], 3);
        assert_eq!(z.symplectic(&x, 3), 1);
    }

    #[test]
    fn canonical_lines() {
        let a = PhasePoint::new(vec![0, 2, 1, 0], 3);
        assert_eq!(a.canonical(3).coords(), &[0, 1, 2, 0]);
        assert_eq!(a.scale_from_canonical(), 2);
        assert!(a.canonical(3).is_canonical(3));
    }

    #[test]
    fn lagrangian_counts() {
        assert_eq!(enumerate_lagrangians(1, 3).unwrap().len(), 4);
        assert_eq!(enumerate_lagrangians(1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_lagrangians(2, 2).unwrap().len(), 15);
        assert_eq!(enumerate_lagrangians(2, 3).unwrap().len(), 40);
        assert_eq!(enumerate_lagrangians(3, 2).unwrap().len(), 135);
        assert!(enumerate_lagrangians(1, 4).is_err());
        assert!(enumerate_lagrangians(1, 6).is_err());
    }

    #[test]
    fn lagrangian_structure() {
        for l in enumerate_lagrangians(2, 3).unwrap() {
            assert_eq!(l.elements().len(), 9);
            assert_eq!(l.lines().len(), 4);
            for a in l.elements() {
                assert!(l.contains(&a));
                for b in l.elements() {
                    assert_eq!(a.symplectic(&b, 3), 0);
                }
            }
        }
    }

    #[test]
    fn labels() {
        assert_eq!(PhasePoint::new(vec![1, 1, 0, 1], 2).label(2), "ZY");
        assert_eq!(PhasePoint::new(vec![1, 0, 0, 2], 3).label(3), "W(10|02)");
    }
}
