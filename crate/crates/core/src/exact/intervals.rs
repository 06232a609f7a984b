//! Rational interval arithmetic, enough to bound trigonometric values of
//! rational multiples of pi to arbitrary precision.
//!
//! Used by the cyclotomic sign routine: a nonzero real cyclotomic number is
//! squeezed between rational bounds that are tightened until zero is
//! excluded. No fixed epsilon exists; precision adapts per query.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// A closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_negative() {
            Interval {
                lo: k * &self.hi,
                hi: k * &self.lo,
            }
        } else {
            Interval {
                lo: k * &self.lo,
                hi: k * &self.hi,
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign when determined: +1 if lo > 0, -1 if hi < 0, else None.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

fn pow_rational(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

/// Enclosure of arctan(x) for rational 0 < x < 1 from the alternating
/// Taylor series: consecutive partial sums bracket the limit.
fn arctan_interval(x: &BigRational, terms: usize) -> Interval {
    debug_assert!(x.is_positive() && *x < BigRational::one());
    let xx = x * x;
    let mut term = x.clone();
    let mut sum = BigRational::zero();
    let mut lo = BigRational::zero();
    let mut hi = term.clone();
    for k in 0..terms {
        let contrib = &term / BigRational::from(BigInt::from(2 * k as i64 + 1));
        if k % 2 == 0 {
            sum += &contrib;
            hi = sum.clone();
        } else {
            sum -= &contrib;
            lo = sum.clone();
        }
        term *= &xx;
    }
    if terms % 2 == 1 {
        // ended on an added term: sum is an upper bound, previous lo holds
        Interval::new(lo, hi)
    } else {
        Interval::new(lo, hi)
    }
}

/// Enclosure of pi at a precision level. Level k uses enough series terms
/// that the width shrinks far below 10^-(8 * 2^k).
pub fn pi_interval(level: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&level) {
        return p.clone();
    }
    // digits ~ 8 * 2^level; arctan(1/5) gains ~1.4 digits per term.
    let digits = 8u64 << level;
    let terms = (digits as usize) + 8;
    let fifth = BigRational::new(BigInt::one(), BigInt::from(5));
    let b239 = BigRational::new(BigInt::one(), BigInt::from(239));
    let a = arctan_interval(&fifth, terms);
    let b = arctan_interval(&b239, terms / 2 + 4);
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)
    let pi = a
        .scale(&BigRational::from(BigInt::from(16)))
        .sub(&b.scale(&BigRational::from(BigInt::from(4))));
    cache.lock().unwrap().insert(level, pi.clone());
    pi
}

/// Enclosure of cos(2 pi j / q) at a precision level.
///
/// The Taylor series of cos is summed with an interval argument; once terms
/// decrease, the alternating tail is bounded by the first omitted term.
pub fn cos_two_pi_interval(j: u64, q: u64, level: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (j % q, q, level);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let result = cos_two_pi_uncached(j % q, q, level);
    cache.lock().unwrap().insert(key, result.clone());
    result
}

fn cos_two_pi_uncached(j: u64, q: u64, level: u32) -> Interval {
    debug_assert!(j < q);
    let frac = BigRational::new(BigInt::from(2 * j), BigInt::from(q));
    let theta = pi_interval(level).scale(&frac); // 0 <= theta < 2 pi
    // terms: |theta| < 7, so t^(2K)/(2K)! < 7^(2K)/(2K)!; K grows with level.
    let k_max = 16usize << level;
    // Evaluate sum_{k<K} (-1)^k theta^(2k) / (2k)! with interval arithmetic,
    // then widen by the tail bound |theta_hi|^(2K)/(2K)!.
    let theta_sq = theta.mul(&theta);
    let mut sum = Interval::point(BigRational::one());
    let mut pow = Interval::point(BigRational::one());
    let mut factorial = BigInt::one();
    for k in 1..k_max {
        pow = pow.mul(&theta_sq);
        factorial *= BigInt::from(2 * k as i64 - 1) * BigInt::from(2 * k as i64);
        let term = pow.scale(&BigRational::new(BigInt::one(), factorial.clone()));
        if k % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
    }
    // tail bound
    let theta_bound = theta.hi.abs().max(theta.lo.abs());
    let mut tail_fact = factorial;
    tail_fact *= BigInt::from(2 * k_max as i64 - 1) * BigInt::from(2 * k_max as i64);
    let tail = pow_rational(&theta_bound, 2 * k_max as u64) / BigRational::from(tail_fact);
    Interval::new(&sum.lo - &tail, &sum.hi + &tail)
}
