//! Exact arithmetic foundation: rationals, cyclotomic numbers with
//! conjugation and rigorous sign determination, integer matrices with
//! Smith normal form.
//!
//! Everything downstream is built on these pieces; no floating point
//! appears anywhere in the crate.

pub mod cyclotomic;
pub mod intervals;
pub mod matrix;
pub mod poly;

pub use cyclotomic::{cyclotomic_real_sign, eval_unit_root, CyclotomicNumber};
pub use matrix::{IntMatrix, SnfResult};
pub use poly::{cyclotomic_polynomial, euler_phi, prime_power_base, IntPolynomial};

/// The exact scalar type used throughout: arbitrary-precision rationals,
/// always reduced, with positive denominator.
pub type Rational = num_rational::BigRational;
