//! Exact arithmetic in the cyclotomic field Q(zeta_q).
//!
//! Elements are polynomials in zeta_q reduced modulo the q-th cyclotomic
//! polynomial, so equality with zero is equality of coefficient vectors.
//! That symbolic zero test is what lets the sign routine terminate: a
//! nonzero real element is eventually separated from zero by interval
//! evaluation, and an exact zero is recognized before any evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::intervals::{cos_two_pi_interval, Interval};
use super::poly::{cyclotomic_polynomial, euler_phi};
use crate::error::{Error, Result};

/// An element of Q(zeta_q), with zeta_q the root of unity e^(2 pi i / q).
///
/// `coeffs` has length phi(q) and represents
/// `coeffs[0] + coeffs[1] zeta + ... ` modulo the q-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0, "order must be positive");
        let deg = euler_phi(order) as usize;
        CyclotomicNumber {
            order,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u64, value: BigRational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = value;
        x
    }

    pub fn from_integer(order: u64, value: i64) -> Self {
        Self::from_rational(order, BigRational::from(BigInt::from(value)))
    }

    /// zeta_q^k as an exact element (k may be any integer; reduced mod q).
    pub fn root_power(order: u64, k: i64) -> Self {
        assert!(order > 0);
        let q = order as i64;
        let k = k.rem_euclid(q) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce(order, raw)
    }

    /// Builds an element from an unreduced coefficient vector.
    fn reduce(order: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.degree().expect("cyclotomic polynomial is nonzero");
        // Polynomial remainder modulo the monic integer polynomial phi.
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = raw.len() - deg;
            for i in 0..deg {
                let c = BigRational::from(phi.coeff(i)) * &top;
                raw[k + i] -= c;
            }
        }
        raw.resize(deg, BigRational::zero());
        CyclotomicNumber {
            order,
            coeffs: raw,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when this element lies in Q, i.e. all higher
    /// coefficients vanish.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic orders differ: {} vs {}",
            self.order, other.order
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.order, raw)
    }

    /// Galois action zeta -> zeta^k for k coprime to the order.
    pub fn galois(&self, k: u64) -> Self {
        let q = self.order;
        debug_assert_eq!(BigInt::from(k).gcd(&BigInt::from(q)), BigInt::one());
        let mut raw = vec![BigRational::zero(); q as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as u64) * k % q) as usize;
            raw[e] += c;
        }
        Self::reduce(q, raw)
    }

    /// Complex conjugation, zeta -> zeta^(q-1).
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the cyclotomic polynomial. `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.order, r.recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .coeffs()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        // extended gcd of (self, phi) in Q[x]: s*self + t*phi = gcd = const
        let (mut r0, mut r1) = (trim(self.coeffs.clone()), trim(phi));
        let (mut s0, mut s1) = (vec![BigRational::one()], vec![]);
        while !r1.is_empty() {
            let (q, r) = poly_div(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant: phi is irreducible and self != 0.
        debug_assert_eq!(r0.len(), 1, "gcd with the minimal polynomial must be constant");
        let c = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|a| a * &c).collect();
        Some(Self::reduce(self.order, inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// Interval enclosure of the value under zeta -> e^(2 pi i / q),
    /// valid only for real elements (the imaginary part vanishes exactly).
    fn real_enclosure(&self, level: u32) -> Interval {
        let mut acc = Interval::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cos = cos_two_pi_interval(j as u64, self.order, level);
            acc = acc.add(&cos.scale(c));
        }
        acc
    }

    /// Exact sign of a real cyclotomic number: -1, 0, or +1.
    ///
    /// Zero is detected symbolically; a nonzero value is separated from
    /// zero by interval evaluation at increasing precision, which must
    /// terminate because the value is genuinely nonzero.
    pub fn real_sign(&self) -> Result<i32> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { 1 } else { -1 });
        }
        if !self.is_real() {
            return Err(Error::NotReal { q: self.order });
        }
        for level in 0.. {
            if let Some(s) = self.real_enclosure(level).definite_sign() {
                return Ok(s);
            }
        }
        unreachable!("interval refinement separates nonzero values from zero")
    }
}

/// zeta_q^r as an exact element, requiring gcd(r, q) = 1.
pub fn eval_unit_root(r: i64, q: u64) -> Result<CyclotomicNumber> {
    if q == 0 {
        return Err(Error::NonPositiveOrder);
    }
    if BigInt::from(r).gcd(&BigInt::from(q)) != BigInt::one() {
        return Err(Error::NotCoprime { r, q });
    }
    Ok(CyclotomicNumber::root_power(q, r))
}

/// Free-function form of [`CyclotomicNumber::real_sign`].
pub fn cyclotomic_real_sign(x: &CyclotomicNumber) -> Result<i32> {
    x.real_sign()
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let get = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
    trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

/// Division with remainder in Q[x]; returns (quotient, remainder).
fn poly_div(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, y) in b.iter().enumerate() {
            let t = &c * y;
            rem[k + i] -= t;
        }
    }
    (trim(quot), trim(rem))
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(q={}; {})", self.order, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{c}")?;
            } else if j == 1 {
                write!(f, "({c})*z")?;
            } else {
                write!(f, "({c})*z^{j}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber::add(self, rhs)
    }
}

impl std::ops::Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber::sub(self, rhs)
    }
}

impl std::ops::Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber::mul(self, rhs)
    }
}

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::neg(self)
    }
}
