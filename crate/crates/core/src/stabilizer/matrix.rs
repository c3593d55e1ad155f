use std::sync::Arc;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::rational::Rational;

/// Dense square matrix over `ℚ(ζ_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<Cyclotomic>,
}

impl CMatrix {
    pub fn zeros(field: &Arc<CyclotomicField>, dim: usize) -> Self {
        CMatrix {
            dim,
            entries: vec![Cyclotomic::zero(field); dim * dim],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Cyclotomic::one(field);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(self.field(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &a.mul_ref(b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.scale(q)).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(self.field(), n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.field());
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> Cyclotomic {
        let n = self.dim;
        let mut t = Cyclotomic::zero(self.field());
        for i in 0..n {
            for k in 0..n {
                let (a, b) = (self.get(i, k), other.get(k, i));
                if !a.is_zero() && !b.is_zero() {
                    t += &a.mul_ref(b);
                }
            }
        }
        t
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = CMatrix::zeros(self.field(), n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.entries[(i * m + k) * n * m + j * m + l] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    /// `M v`.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut acc = Cyclotomic::zero(self.field());
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &a.mul_ref(x);
                    }
                }
                acc
            })
            .collect()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.dim, k % self.dim))
    }
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<&Cyclotomic>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// `⟨u|v⟩ = Σ conj(u_i) v_i`.
pub fn inner(u: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(u[0].field());
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &a.conj().mul_ref(b);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn products_and_traces() {
        let f = CyclotomicField::get(4).unwrap();
        let i = Cyclotomic::root_of_unity(&f, 1);
        let mut y = CMatrix::zeros(&f, 2);
        y.set(0, 1, -&i);
        y.set(1, 0, i.clone());
        assert_eq!(y.mul(&y), CMatrix::identity(&f, 2));
        assert_eq!(y.adjoint(), y);
        assert!(y.trace().is_zero());
        let yy = y.kron(&y);
        assert_eq!(yy.dim(), 4);
        assert_eq!(yy.get(0, 3), &Cyclotomic::from_rational(&f, int(-1)));
        assert_eq!(yy.trace_product(&yy).to_rational(), Some(int(4)));
    }
}
