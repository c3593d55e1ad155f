//! Exact arithmetic in the cyclotomic field `ℚ(ζ_m)`, `ζ_m = e^{2πi/m}`.
//!
//! Numbers are stored in the power basis `1, ζ, …, ζ^{φ(m)−1}`, which is a
//! `ℚ`-basis, so equality and the zero test are coefficientwise.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Reduction data for `ℚ(ζ_m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    degree: usize,
    /// `powers[j]` is `ζ^j` reduced to the power basis, for `j < 2·max(m, φ)`.
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    assert!(m >= 1);
    // x^m − 1 divided by Φ_k for every proper divisor k of m.
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for k in (1..m).filter(|k| m.is_multiple_of(*k)) {
        num = divide_monic(&num, &cyclotomic_polynomial(k));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

impl CyclotomicField {
    fn build(order: usize) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let count = 2 * order.max(degree) + 1;
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // Multiply by ζ and reduce with ζ^φ = −Σ_{i<φ} Φ_i ζ^i.
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        CyclotomicField {
            order,
            degree,
            powers,
        }
    }

    /// Shared field data for `ℚ(ζ_m)`, cached per order.
    pub fn get(order: usize) -> Result<Arc<CyclotomicField>> {
        if order == 0 || order > 512 {
            return Err(Error::domain(format!("unsupported cyclotomic order {order}")));
        }
        static CACHE: OnceLock<Mutex<Vec<Option<Arc<CyclotomicField>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        if guard.len() <= order {
            guard.resize(order + 1, None);
        }
        Ok(guard[order]
            .get_or_insert_with(|| Arc::new(CyclotomicField::build(order)))
            .clone())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(m)`, the dimension of the field over `ℚ`.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// An element of `ℚ(ζ_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let m = field.order as i64;
        let j = k.rem_euclid(m) as usize;
        Cyclotomic {
            field: field.clone(),
            coeffs: field.powers[j].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        }
    }

    /// `Σ c_k ζ^k` from coefficients over `1, ζ, …` (any length).
    pub fn from_power_coeffs(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let mut z = Self::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            z.add_scaled_power(k % field.order, c);
        }
        z
    }

    fn add_scaled_power(&mut self, k: usize, c: &Rational) {
        for (slot, &p) in self.coeffs.iter_mut().zip(&self.field.powers[k]) {
            if p != 0 {
                *slot += c * Rational::from_integer(BigInt::from(p));
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the number lies in `ℚ`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugate, induced by `ζ ↦ ζ^{m−1}`.
    pub fn conj(&self) -> Self {
        let m = self.field.order;
        let mut out = Self::zero(&self.field);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power((m - k) % m, c);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check(&self, other: &Cyclotomic) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing cyclotomic fields of different order"
        );
    }

    pub fn mul_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check(other);
        let d = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = Cyclotomic {
            field: self.field.clone(),
            coeffs: prod[..d].to_vec(),
        };
        for (k, c) in prod.iter().enumerate().skip(d) {
            if !c.is_zero() {
                out.add_scaled_power(k, c);
            }
        }
        out
    }

    /// Reinterprets the number in `ℚ(ζ_n)` for a multiple `n` of `m`.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Cyclotomic> {
        let (m, n) = (self.field.order, target.order);
        if n % m != 0 {
            return Err(Error::domain(format!("ℚ(ζ_{m}) does not embed in ℚ(ζ_{n})")));
        }
        let step = n / m;
        let mut out = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(k * step % n, c);
            }
        }
        Ok(out)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => rational::to_string(c),
                _ => format!("{}·ζ{}^{k}", rational::to_string(c), self.field.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        for m in [3usize, 4, 6, 9, 12] {
            let f = CyclotomicField::get(m).unwrap();
            let z = Cyclotomic::root_of_unity(&f, 1);
            let mut p = Cyclotomic::one(&f);
            let mut sum = Cyclotomic::zero(&f);
            for _ in 0..m {
                sum += &p;
                p = &p * &z;
            }
            assert_eq!(p, Cyclotomic::one(&f), "ζ^{m} = 1");
            assert!(sum.is_zero(), "Σ ζ^k = 0 for m = {m}");
            assert_eq!(&z * &z.conj(), Cyclotomic::one(&f));
        }
    }

    #[test]
    fn gaussian_integers() {
        let f = CyclotomicField::get(4).unwrap();
        let i = Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(&i * &i, Cyclotomic::from_rational(&f, int(-1)));
        assert_eq!(i.conj(), -&i);
        let a = &Cyclotomic::from_rational(&f, frac(1, 2)) + &i;
        assert_eq!((&a * &a.conj()).to_rational(), Some(frac(5, 4)));
        assert_eq!(a.to_rational(), None);
    }

    #[test]
    fn embedding() {
        let f3 = CyclotomicField::get(3).unwrap();
        let f12 = CyclotomicField::get(12).unwrap();
        let w = Cyclotomic::root_of_unity(&f3, 1);
        assert_eq!(w.embed(&f12).unwrap(), Cyclotomic::root_of_unity(&f12, 4));
        assert!(w.embed(&CyclotomicField::get(4).unwrap()).is_err());
    }

    #[test]
    fn power_coefficients_reduce() {
        let f = CyclotomicField::get(3).unwrap();
        // 1 + ω + ω² = 0
        let z = Cyclotomic::from_power_coeffs(&f, &[int(1), int(1), int(1)]);
        assert!(z.is_zero());
    }
}
