//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(φ(m)-1)` after
//! reduction modulo the m-th cyclotomic polynomial, so two elements are
//! equal iff their coefficient vectors are equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduction data for one conductor.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: usize,
    degree: usize,
    /// `powers[k]` is `ζ^k` in the power basis, `0 <= k < m`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(conductor: usize) -> Arc<Self> {
        assert!(conductor > 0, "conductor must be positive");
        let phi_poly = cyclotomic_polynomial(conductor);
        let degree = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(conductor);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_m
            let top = if degree > 0 { cur[degree - 1] } else { 0 };
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            for (i, c) in next.iter_mut().enumerate() {
                *c -= top * phi_poly[i];
            }
            cur = next;
        }
        Arc::new(CyclotomicField { conductor, degree, powers })
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut quot = vec![0i64; rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn] / lead;
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree] }
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    /// `ζ^k`, with `k` taken modulo the conductor.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let m = field.conductor as i64;
        let idx = k.rem_euclid(m) as usize;
        Cyclotomic {
            field: field.clone(),
            coeffs: field.powers[idx].iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    /// `Σ_k counts[k] ζ^k` for a multiset of exponents.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        let mut acc = vec![0i64; field.degree];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&field.powers[k % field.conductor]) {
                    *a += c * p;
                }
            }
        }
        Cyclotomic { field: field.clone(), coeffs: acc.into_iter().map(|c| BigRational::from_integer(c.into())).collect() }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> usize {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`gcd(k, m) = 1`).
    pub fn galois(&self, k: usize) -> Self {
        let m = self.field.conductor;
        let mut out = vec![BigRational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.field.powers[(i * k) % m]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs: out }
    }

    /// Complex conjugation, `ζ ↦ ζ^(m-1)`.
    pub fn conj(&self) -> Self {
        self.galois(self.field.conductor - 1)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Floating-point value, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let m = self.field.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / m;
            (re + v * t.cos(), im + v * t.sin())
        })
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.field.conductor, other.field.conductor, "mixed cyclotomic conductors");
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the reduced coefficient vector; used only to make
/// orderings deterministic.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.conductor.cmp(&other.field.conductor).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => format!("z{}", self.field.conductor),
                (_, true) => format!("z{}^{i}", self.field.conductor),
                (1, false) => format!("{mag}*z{}", self.field.conductor),
                (_, false) => format!("{mag}*z{}^{i}", self.field.conductor),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_field(rhs);
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_field(rhs);
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_field(rhs);
        let m = self.field.conductor;
        // accumulate on ζ^k, 0 <= k < m, then reduce once
        let mut by_power = vec![BigRational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                by_power[(i + j) % m] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); self.field.degree];
        for (k, c) in by_power.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, &p) in out.iter_mut().zip(&self.field.powers[k]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_has_order_m() {
        for m in [1, 2, 3, 4, 5, 6, 8, 9, 12, 15] {
            let f = CyclotomicField::new(m);
            let z = Cyclotomic::root_of_unity(&f, 1);
            let mut p = Cyclotomic::from_integer(&f, 1);
            for _ in 0..m {
                p = &p * &z;
            }
            assert_eq!(p, Cyclotomic::from_integer(&f, 1), "m = {m}");
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        let f = CyclotomicField::new(12);
        let mut s = Cyclotomic::zero(&f);
        for k in 0..12 {
            s += &Cyclotomic::root_of_unity(&f, k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_is_inverse_on_roots() {
        let f = CyclotomicField::new(8);
        for k in 0..8 {
            let z = Cyclotomic::root_of_unity(&f, k);
            assert_eq!(&z * &z.conj(), Cyclotomic::from_integer(&f, 1));
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CyclotomicField::new(4);
        let i = Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(&f, -1));
        assert_eq!((&i * &i).to_rational(), Some(BigRational::from_integer((-1).into())));
        assert_eq!(i.to_rational(), None);
    }

    #[test]
    fn display() {
        let f = CyclotomicField::new(4);
        let x = &Cyclotomic::from_integer(&f, 2) - &Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(x.to_string(), "2 - z4");
    }
}
