//! Test-support oracles and generators for the exact pipeline.
//!
//! The centerpiece is an eigenvalue-counting oracle for Hermitian
//! cyclotomic matrices that shares nothing with the exact elimination it
//! cross-checks: entries are evaluated numerically at high precision, the
//! matrix is doubled into a real symmetric one, and cyclic Jacobi
//! rotations recover the spectrum. Eigenvalues are then classified by
//! sign against a threshold far above the numerical noise floor and far
//! below the smallest nonzero eigenvalue a small rational matrix can have.

pub mod bigfloat;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use bigfloat::{BigFloat, Ctx};
use slicebound::exact::{CyclotomicNumber, IntMatrix};
use slicebound::forms::{HermitianMatrix, SeifertMatrix, SigNull};

/// Numerically evaluate the real and imaginary part of a cyclotomic
/// number under zeta_q -> e^(2 pi i / q).
fn complex_eval(ctx: &Ctx, x: &CyclotomicNumber) -> (BigFloat, BigFloat) {
    let q = x.order();
    let pi = ctx.pi();
    let mut re = ctx.zero();
    let mut im = ctx.zero();
    for (j, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let angle = ctx.div(
            &ctx.mul(&ctx.mul(&pi, &ctx.from_i64(2 * j as i64)), &ctx.from_i64(1)),
            &ctx.from_i64(q as i64),
        );
        let (cos, sin) = ctx.cos_sin(&angle);
        let coeff = ctx.from_rational(c);
        re = ctx.add(&re, &ctx.mul(&coeff, &cos));
        im = ctx.add(&im, &ctx.mul(&coeff, &sin));
    }
    (re, im)
}

/// Sign of a real cyclotomic number by plain floating evaluation at the
/// given number of decimal digits; values smaller than 10^(-digits/2) in
/// magnitude are declared zero.
pub fn eval_real_sign(x: &CyclotomicNumber, digits: u32) -> i32 {
    let ctx = Ctx::with_decimal_digits(digits);
    let (re, _) = complex_eval(&ctx, x);
    let threshold_bits = -((digits as i64) * 10 / 6); // ~ 10^(-digits/2)
    if ctx.abs_cmp_pow2(&re, threshold_bits) == std::cmp::Ordering::Less {
        0
    } else {
        ctx.sign(&re)
    }
}

/// Eigenvalue-counting oracle: signature and nullity of a Hermitian
/// cyclotomic matrix by Jacobi diagonalization of the doubled real
/// symmetric matrix [[A, -B], [B, A]] at `digits` decimal digits.
pub fn eigenvalue_sig_null(h: &HermitianMatrix, digits: u32) -> SigNull {
    let n = h.size();
    if n == 0 {
        return SigNull::ZERO;
    }
    let ctx = Ctx::with_decimal_digits(digits);
    let m = 2 * n;
    let mut a = vec![ctx.zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = complex_eval(&ctx, h.entry(i, j));
            a[i * m + j] = re.clone();
            a[(n + i) * m + (n + j)] = re;
            a[i * m + (n + j)] = ctx.neg(&im);
            a[(n + i) * m + j] = im;
        }
    }
    jacobi_in_place(&ctx, &mut a, m, digits);
    // classify the doubled spectrum
    let threshold_bits = -((digits as i64) * 10 / 6);
    let (mut pos, mut neg, mut zero) = (0i64, 0i64, 0i64);
    for i in 0..m {
        let d = &a[i * m + i];
        if ctx.abs_cmp_pow2(d, threshold_bits) == std::cmp::Ordering::Less {
            zero += 1;
        } else if ctx.sign(d) > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    assert!(pos % 2 == 0 && neg % 2 == 0 && zero % 2 == 0, "doubled spectrum");
    SigNull {
        signature: (pos - neg) / 2,
        nullity: (zero / 2) as usize,
    }
}

fn jacobi_in_place(ctx: &Ctx, a: &mut [BigFloat], m: usize, digits: u32) {
    let stop_bits = -((digits as i64) * 10 / 3) + 8;
    for _sweep in 0..64 {
        // largest off-diagonal magnitude as the convergence measure
        let mut biggest: Option<BigFloat> = None;
        for p in 0..m {
            for q in p + 1..m {
                let v = ctx.abs(&a[p * m + q]);
                biggest = Some(match biggest {
                    None => v,
                    Some(b) => {
                        if ctx.cmp(&v, &b) == std::cmp::Ordering::Greater {
                            v
                        } else {
                            b
                        }
                    }
                });
            }
        }
        let Some(off) = biggest else { return };
        if ctx.abs_cmp_pow2(&off, stop_bits) == std::cmp::Ordering::Less {
            return;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q].clone();
                // skip already-negligible entries
                if ctx.abs_cmp_pow2(&apq, stop_bits - 8) == std::cmp::Ordering::Less {
                    continue;
                }
                let app = a[p * m + p].clone();
                let aqq = a[q * m + q].clone();
                // t = sign(theta) / (|theta| + sqrt(theta^2 + 1))
                let theta = ctx.div(
                    &ctx.sub(&aqq, &app),
                    &ctx.mul(&ctx.from_i64(2), &apq),
                );
                let root = ctx.sqrt(&ctx.add(&ctx.mul(&theta, &theta), &ctx.from_i64(1)));
                let t = {
                    let denom = ctx.add(&ctx.abs(&theta), &root);
                    let mag = ctx.div(&ctx.from_i64(1), &denom);
                    if ctx.sign(&theta) < 0 {
                        ctx.neg(&mag)
                    } else {
                        mag
                    }
                };
                let c = ctx.div(
                    &ctx.from_i64(1),
                    &ctx.sqrt(&ctx.add(&ctx.mul(&t, &t), &ctx.from_i64(1))),
                );
                let s = ctx.mul(&t, &c);
                // rotate rows/columns p and q
                for k in 0..m {
                    let akp = a[k * m + p].clone();
                    let akq = a[k * m + q].clone();
                    a[k * m + p] = ctx.sub(&ctx.mul(&c, &akp), &ctx.mul(&s, &akq));
                    a[k * m + q] = ctx.add(&ctx.mul(&s, &akp), &ctx.mul(&c, &akq));
                }
                for k in 0..m {
                    let apk = a[p * m + k].clone();
                    let aqk = a[q * m + k].clone();
                    a[p * m + k] = ctx.sub(&ctx.mul(&c, &apk), &ctx.mul(&s, &aqk));
                    a[q * m + k] = ctx.add(&ctx.mul(&s, &apk), &ctx.mul(&c, &aqk));
                }
            }
        }
    }
    panic!("Jacobi iteration failed to converge");
}

/// Uniform rational with numerator in [-max_num, max_num] and denominator
/// in [1, max_den].
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random cyclotomic number of the given order with small rational
/// coefficients.
pub fn random_cyclotomic<R: Rng>(rng: &mut R, q: u64, max_num: i64, max_den: i64) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero(q);
    let degree = acc.coeffs().len();
    for j in 0..degree {
        let c = random_rational(rng, max_num, max_den);
        acc = acc.add(&CyclotomicNumber::root_power(q, j as i64).scale(&c));
    }
    acc
}

/// Random real (conjugation-fixed) cyclotomic number: x + conj(x) plus a
/// rational, occasionally exactly zero.
pub fn random_real_cyclotomic<R: Rng>(rng: &mut R, q: u64) -> CyclotomicNumber {
    if rng.gen_ratio(1, 16) {
        return CyclotomicNumber::zero(q);
    }
    let x = random_cyclotomic(rng, q, 4, 3);
    let r = CyclotomicNumber::from_rational(q, random_rational(rng, 4, 3));
    x.add(&x.conj()).add(&r)
}

/// Random Hermitian matrix over Q(zeta_q): M + conj(M)^T for a random M.
pub fn random_hermitian<R: Rng>(rng: &mut R, q: u64, n: usize) -> HermitianMatrix {
    let raw: Vec<Vec<CyclotomicNumber>> = (0..n)
        .map(|_| (0..n).map(|_| random_cyclotomic(rng, q, 3, 2)).collect())
        .collect();
    let rows: Vec<Vec<CyclotomicNumber>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| raw[i][j].add(&raw[j][i].conj()))
                .collect()
        })
        .collect();
    HermitianMatrix::new(q, rows).expect("M + conj(M)^T is Hermitian")
}

/// Random integer matrix with entries in [-range, range].
pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> IntMatrix {
    let data: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-range..=range)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(data).expect("rectangular by construction")
}

/// Random Seifert matrix: any square integer matrix, with a consistent
/// random choice of genus and component count (n = 2g + mu - 1).
pub fn random_seifert<R: Rng>(rng: &mut R, max_size: usize, range: i64) -> SeifertMatrix {
    let n = rng.gen_range(0..=max_size);
    let g = rng.gen_range(0..=(n / 2)) as u32;
    let mu = (n + 1 - 2 * g as usize) as u32;
    SeifertMatrix::new(random_int_matrix(rng, n, n, range), mu, Some(g))
        .expect("sizes chosen consistently")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn oracle_on_known_matrices() {
        // [[4]] over Q: one positive eigenvalue
        let h = HermitianMatrix::from_symmetric_int(&IntMatrix::from_i64(&[&[4]])).unwrap();
        assert_eq!(
            eigenvalue_sig_null(&h, 60),
            SigNull { signature: 1, nullity: 0 }
        );
        // [[-4, 2], [2, -4]]: eigenvalues -2 and -6
        let h = HermitianMatrix::from_symmetric_int(&IntMatrix::from_i64(&[
            &[-4, 2],
            &[2, -4],
        ]))
        .unwrap();
        assert_eq!(
            eigenvalue_sig_null(&h, 60),
            SigNull { signature: -2, nullity: 0 }
        );
        // singular: [[1, 1], [1, 1]]
        let h = HermitianMatrix::from_symmetric_int(&IntMatrix::from_i64(&[
            &[1, 1],
            &[1, 1],
        ]))
        .unwrap();
        assert_eq!(
            eigenvalue_sig_null(&h, 60),
            SigNull { signature: 1, nullity: 1 }
        );
    }

    #[test]
    fn oracle_on_hyperbolic_cyclotomic_block() {
        let c = CyclotomicNumber::one(3).sub(&CyclotomicNumber::root_power(3, 1));
        let zero = CyclotomicNumber::zero(3);
        let h = HermitianMatrix::new(
            3,
            vec![
                vec![zero.clone(), c.clone()],
                vec![c.conj(), zero.clone()],
            ],
        )
        .unwrap();
        assert_eq!(
            eigenvalue_sig_null(&h, 60),
            SigNull { signature: 0, nullity: 0 }
        );
    }

    #[test]
    fn eval_sign_matches_symbolic() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let q = [1u64, 2, 3, 5, 8, 12][rng.gen_range(0..6)];
            let x = random_real_cyclotomic(&mut rng, q);
            assert_eq!(eval_real_sign(&x, 80), x.real_sign().unwrap());
        }
    }
}
