//! Fixed-precision binary floating point on top of BigInt, sufficient for
//! the eigenvalue-counting oracle: +, -, *, /, sqrt, comparisons, pi, and
//! sin/cos by Taylor series. Rounding is truncation toward zero; the
//! oracle operates with tens of guard digits beyond what it asserts, so
//! rounding direction is immaterial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// value = mantissa * 2^exp
#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
}

/// Arithmetic context carrying the working precision in bits.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub prec: u32,
}

impl Ctx {
    pub fn with_decimal_digits(digits: u32) -> Ctx {
        // 10^digits ~ 2^(3.33 digits); add generous guard bits
        Ctx {
            prec: digits * 10 / 3 + 96,
        }
    }

    fn round(&self, mut m: BigInt, mut exp: i64) -> BigFloat {
        let bits = m.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            m >>= shift;
            exp += shift as i64;
        }
        if m.is_zero() {
            exp = 0;
        }
        BigFloat { mantissa: m, exp }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat {
            mantissa: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        self.round(BigInt::from(v), 0)
    }

    pub fn from_rational(&self, r: &BigRational) -> BigFloat {
        let num = self.round(r.numer().clone(), 0);
        let den = self.round(r.denom().clone(), 0);
        self.div(&num, &den)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if a.mantissa.is_zero() {
            return b.clone();
        }
        if b.mantissa.is_zero() {
            return a.clone();
        }
        let (hi, lo) = if a.exp >= b.exp { (a, b) } else { (b, a) };
        let shift = (hi.exp - lo.exp) as u64;
        // the low part is negligible once it is shifted out of range
        if shift > self.prec as u64 + hi.mantissa.bits() + 4 {
            return hi.clone();
        }
        let m = (&hi.mantissa << shift) + &lo.mantissa;
        self.round(m, lo.exp)
    }

    pub fn neg(&self, a: &BigFloat) -> BigFloat {
        BigFloat {
            mantissa: -a.mantissa.clone(),
            exp: a.exp,
        }
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.round(&a.mantissa * &b.mantissa, a.exp + b.exp)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        assert!(!b.mantissa.is_zero(), "division by zero");
        if a.mantissa.is_zero() {
            return self.zero();
        }
        let want = self.prec as i64 + 4;
        let shift = (want + b.mantissa.bits() as i64 - a.mantissa.bits() as i64).max(0) as u64;
        let q = (&a.mantissa << shift) / &b.mantissa;
        self.round(q, a.exp - shift as i64 - b.exp)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        assert!(!a.mantissa.is_negative(), "sqrt of a negative value");
        if a.mantissa.is_zero() {
            return self.zero();
        }
        // scale the mantissa so its square root carries full precision and
        // the exponent is even
        let mut m = a.mantissa.clone();
        let mut exp = a.exp;
        let want_bits = 2 * (self.prec as i64 + 4);
        let mut shift = (want_bits - m.bits() as i64).max(0);
        if (exp - shift) % 2 != 0 {
            shift += 1;
        }
        m <<= shift as u64;
        exp -= shift;
        let root = num_integer::Roots::sqrt(&m);
        self.round(root, exp / 2)
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        BigFloat {
            mantissa: a.mantissa.abs(),
            exp: a.exp,
        }
    }

    pub fn sign(&self, a: &BigFloat) -> i32 {
        if a.mantissa.is_zero() {
            0
        } else if a.mantissa.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Compare |a| with 2^e.
    pub fn abs_cmp_pow2(&self, a: &BigFloat, e: i64) -> std::cmp::Ordering {
        if a.mantissa.is_zero() {
            return std::cmp::Ordering::Less;
        }
        let abs = a.mantissa.abs();
        let high = abs.bits() as i64 + a.exp; // 2^(high-1) <= |a| < 2^high
        if high - 1 > e {
            return std::cmp::Ordering::Greater;
        }
        if high <= e {
            return std::cmp::Ordering::Less;
        }
        // e = high - 1: compare exactly
        let shift = e - a.exp;
        if shift >= 0 {
            abs.cmp(&(BigInt::from(1) << shift as u64))
        } else {
            (abs << (-shift) as u64).cmp(&BigInt::from(1))
        }
    }

    pub fn cmp(&self, a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
        self.sign(&self.sub(a, b)).cmp(&0)
    }

    /// pi by Machin's formula, to the context precision.
    pub fn pi(&self) -> BigFloat {
        let atan_inv = |n: i64| {
            // arctan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
            let mut term = self.div(&self.from_i64(1), &self.from_i64(n));
            let n2 = self.from_i64(n * n);
            let mut sum = self.zero();
            let mut k = 0i64;
            loop {
                let contrib = self.div(&term, &self.from_i64(2 * k + 1));
                if contrib.mantissa.is_zero()
                    || contrib.mantissa.bits() as i64 + contrib.exp
                        < -(self.prec as i64) - 8
                {
                    break;
                }
                sum = if k % 2 == 0 {
                    self.add(&sum, &contrib)
                } else {
                    self.sub(&sum, &contrib)
                };
                term = self.div(&term, &n2);
                k += 1;
            }
            sum
        };
        let a = self.mul(&self.from_i64(16), &atan_inv(5));
        let b = self.mul(&self.from_i64(4), &atan_inv(239));
        self.sub(&a, &b)
    }

    /// cos(x) and sin(x) for |x| < 8 by Taylor series.
    pub fn cos_sin(&self, x: &BigFloat) -> (BigFloat, BigFloat) {
        let x2 = self.mul(x, x);
        let mut cos = self.from_i64(1);
        let mut sin = x.clone();
        let mut term_c = self.from_i64(1);
        let mut term_s = x.clone();
        let mut k = 0i64;
        loop {
            // next cos term: * -x^2 / ((2k+1)(2k+2))
            term_c = self.div(
                &self.mul(&term_c, &x2),
                &self.from_i64((2 * k + 1) * (2 * k + 2)),
            );
            term_s = self.div(
                &self.mul(&term_s, &x2),
                &self.from_i64((2 * k + 2) * (2 * k + 3)),
            );
            let sign = k % 2 == 0; // first correction subtracts
            cos = if sign {
                self.sub(&cos, &term_c)
            } else {
                self.add(&cos, &term_c)
            };
            sin = if sign {
                self.sub(&sin, &term_s)
            } else {
                self.add(&sin, &term_s)
            };
            let done = |t: &BigFloat| {
                t.mantissa.is_zero()
                    || t.mantissa.bits() as i64 + t.exp < -(self.prec as i64) - 8
            };
            if done(&term_c) && done(&term_s) {
                break;
            }
            k += 1;
        }
        (cos, sin)
    }
}
