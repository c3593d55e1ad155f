//! Weyl (generalized Pauli) operators.
//!
//! Single qudit, odd `d`: `W(p, q) = ω^{−2⁻¹pq} Z^p X^q` with `Z|j⟩ = ω^j|j⟩`,
//! `X|j⟩ = |j+1⟩`, `ω = e^{2πi/d}`. These satisfy
//! `W(a) W(b) = ω^{2⁻¹[a,b]} W(a+b)` and `W(λa) = W(a)^λ`.
//!
//! Qubits: `(0,0) ↦ I`, `(1,0) ↦ Z`, `(0,1) ↦ X`, `(1,1) ↦ Y = iXZ`.
//!
//! Multi-qudit operators are tensor products over qudits, qudit 0 being the
//! most significant digit of the computational basis index.

use std::sync::Arc;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::matrix::CMatrix;
use super::phase::{inv_mod, PhasePoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Weyl operators of `n` qudits of prime dimension `d`, over `ℚ(ζ_m)`.
#[derive(Clone, Debug)]
pub struct WeylBasis {
    pub n: usize,
    pub d: u32,
    field: Arc<CyclotomicField>,
}

impl WeylBasis {
    /// `m` must be a multiple of `d` (of 4 for qubits).
    pub fn new(n: usize, d: u32, field_order: usize) -> Result<Self> {
        let need = if d == 2 { 4 } else { d as usize };
        if !field_order.is_multiple_of(need) {
            return Err(Error::domain(format!(
                "field order {field_order} does not contain the phases of d = {d} (need a multiple of {need})"
            )));
        }
        Ok(WeylBasis {
            n,
            d,
            field: CyclotomicField::get(field_order)?,
        })
    }

    /// Smallest field order supporting qudit dimension `d`.
    pub fn default_field_order(d: u32) -> usize {
        if d == 2 {
            4
        } else {
            d as usize
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        (self.d as usize).pow(self.n as u32)
    }

    /// `ω^k` with `ω = e^{2πi/d}` (for qubits `ω = −1`).
    pub fn omega(&self, k: i64) -> Cyclotomic {
        let step = (self.field.order() / self.d as usize) as i64;
        Cyclotomic::root_of_unity(&self.field, k * step)
    }

    /// `i^k`.
    pub fn i_pow(&self, k: i64) -> Result<Cyclotomic> {
        let m = self.field.order();
        if !m.is_multiple_of(4) {
            return Err(Error::domain("field does not contain i"));
        }
        Ok(Cyclotomic::root_of_unity(&self.field, k * (m / 4) as i64))
    }

    fn single(&self, p: u32, q: u32) -> CMatrix {
        let d = self.d as usize;
        let mut m = CMatrix::zeros(&self.field, d);
        if self.d == 2 {
            // Y = iXZ: Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩.
            let i = self.i_pow(1).expect("qubit fields contain i");
            for j in 0..2usize {
                let target = (j + q as usize) % 2;
                let mut phase = Cyclotomic::one(&self.field);
                if p == 1 && j == 1 {
                    phase = -&phase;
                }
                if p == 1 && q == 1 {
                    phase = phase.mul_ref(&i);
                }
                m.set(target, j, phase);
            }
            return m;
        }
        // W(p,q)|j⟩ = ω^{−2⁻¹pq} Z^p |j+q⟩ = ω^{−2⁻¹pq + p(j+q)} |j+q⟩
        let half = inv_mod(2, self.d) as i64;
        let dd = self.d as i64;
        for j in 0..d {
            let target = (j + q as usize) % d;
            let exp = (-half * p as i64 * q as i64 + p as i64 * target as i64).rem_euclid(dd);
            m.set(target, j, self.omega(exp));
        }
        m
    }

    /// `W(a)` as a `d^n × d^n` matrix.
    pub fn operator(&self, a: &PhasePoint) -> CMatrix {
        assert_eq!(a.num_qudits(), self.n);
        let mut out = self.single(a.p(0), a.q(0));
        for i in 1..self.n {
            out = out.kron(&self.single(a.p(i), a.q(i)));
        }
        out
    }

    /// Projector onto the eigenspace of measurement `a` with outcome `k`:
    /// eigenvalue `ω^k` for odd `d`, `(−1)^k` for qubits.
    pub fn eigenprojector(&self, a: &PhasePoint, k: u32) -> CMatrix {
        let dim = self.dim();
        let d = self.d;
        let inv_d = Rational::new(1.into(), (d as i64).into());
        let mut acc = CMatrix::zeros(&self.field, dim);
        for j in 0..d {
            let op = if j == 0 {
                CMatrix::identity(&self.field, dim)
            } else {
                self.operator(&a.scale(j, d))
            };
            let coeff = self.omega(-(j as i64) * k as i64);
            acc = acc.add(&op.scale(&coeff));
        }
        acc.scale_rational(&inv_d)
    }

    /// Outcome `k` with `W(a) P = eigenvalue(k) · P`, if `P` lies in one eigenspace.
    pub fn outcome_on(&self, a: &PhasePoint, projector: &CMatrix) -> Option<u32> {
        let (i, j) = projector.first_nonzero()?;
        let wp = self.operator(a).mul(projector);
        let target = projector.get(i, j);
        (0..self.d).find(|&k| {
            let lambda = self.omega(k as i64);
            wp.get(i, j) == &lambda.mul_ref(target) && wp == projector.scale(&lambda)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::phase::all_points;

    /// Exact relation `W(a) W(b) = c · W(a+b)`; returns `c` if it exists.
    fn relation_phase(w: &WeylBasis, a: &PhasePoint, b: &PhasePoint) -> Option<Cyclotomic> {
        let lhs = w.operator(a).mul(&w.operator(b));
        let rhs = w.operator(&a.add(b, w.d));
        let (i, j) = rhs.first_nonzero()?;
        // W(a+b) is monomial with unit-modulus entries: recover c from one entry.
        let c = lhs.get(i, j).mul_ref(&rhs.get(i, j).conj());
        (lhs == rhs.scale(&c)).then_some(c)
    }

    #[test]
    fn odd_weyl_relations_two_qutrits() {
        let w = WeylBasis::new(2, 3, 3).unwrap();
        let half = inv_mod(2, 3) as i64;
        let pts: Vec<PhasePoint> = all_points(2, 3).collect();
        for a in &pts {
            for b in &pts {
                let c = relation_phase(&w, a, b).expect("Weyl relation holds");
                assert_eq!(c, w.omega(half * a.symplectic(b, 3) as i64));
                let ab = w.operator(a).mul(&w.operator(b));
                let ba = w.operator(b).mul(&w.operator(a));
                assert_eq!(ab == ba, a.symplectic(b, 3) == 0);
            }
        }
    }

    #[test]
    fn qubit_pauli_relations() {
        let w = WeylBasis::new(2, 2, 4).unwrap();
        let pts: Vec<PhasePoint> = all_points(2, 2).collect();
        for a in &pts {
            let op = w.operator(a);
            assert_eq!(op.mul(&op), CMatrix::identity(w.field(), 4));
            assert_eq!(op.adjoint(), op);
            for b in &pts {
                let c = relation_phase(&w, a, b).expect("Pauli relation holds");
                let is_fourth_root = (0..4).any(|k| c == w.i_pow(k).unwrap());
                assert!(is_fourth_root);
                let ab = w.operator(a).mul(&w.operator(b));
                let ba = w.operator(b).mul(&w.operator(a));
                assert_eq!(ab == ba, a.symplectic(b, 2) == 0);
            }
        }
    }

    #[test]
    fn y_is_i_x_z() {
        let w = WeylBasis::new(1, 2, 4).unwrap();
        let x = w.operator(&PhasePoint::new(vec![0, 1], 2));
        let z = w.operator(&PhasePoint::new(vec![1, 0], 2));
        let y = w.operator(&PhasePoint::new(vec![1, 1], 2));
        assert_eq!(y, x.mul(&z).scale(&w.i_pow(1).unwrap()));
    }

    #[test]
    fn powers_follow_scaling() {
        let w = WeylBasis::new(1, 3, 3).unwrap();
        for a in all_points(1, 3) {
            assert_eq!(w.operator(&a).mul(&w.operator(&a)), w.operator(&a.scale(2, 3)));
        }
    }

    #[test]
    fn eigenprojectors_resolve_identity() {
        for (d, m) in [(2u32, 4usize), (3, 3)] {
            let w = WeylBasis::new(1, d, m).unwrap();
            let a = PhasePoint::new(vec![1, 1], d);
            let mut sum = CMatrix::zeros(w.field(), d as usize);
            for k in 0..d {
                let p = w.eigenprojector(&a, k);
                assert_eq!(p.mul(&p), p);
                assert_eq!(w.outcome_on(&a, &p), Some(k));
                sum = sum.add(&p);
            }
            assert_eq!(sum, CMatrix::identity(w.field(), d as usize));
        }
    }

    #[test]
    fn field_must_contain_phases() {
        assert!(WeylBasis::new(1, 2, 2).is_err());
        assert!(WeylBasis::new(1, 3, 4).is_err());
        assert!(WeylBasis::new(1, 3, 12).is_ok());
    }
}
