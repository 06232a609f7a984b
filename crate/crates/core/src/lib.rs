//! Exact computation of link slicing obstructions.
//!
//! This crate computes, in exact arithmetic, the classical and
//! covering-space signature invariants that obstruct a link in the
//! 3-sphere from bounding a low-genus surface in the 4-ball:
//!
//! - Tristram-Levine signatures and nullities of Seifert matrices, and the
//!   Alexander polynomial ([`forms`]);
//! - linking forms of double branched covers on finite abelian groups,
//!   together with their characters, self-annihilating characters and
//!   metabolizers ([`homology`]);
//! - signature defects of finite cyclic covers evaluated through a surgery
//!   formula, with connected-sum additivity ([`casson_gordon`]);
//! - the resulting slice-genus lower bounds, both the classical
//!   signature/nullity bound and the sharper covering-space test, with a
//!   runner for a built-in two-component example family where the
//!   classical bound is silent ([`obstruction`]).
//!
//! All arithmetic is exact: rationals, cyclotomic field elements, and
//! integer matrices ([`exact`]). Signs of real cyclotomic numbers are
//! decided by a symbolic zero test plus adaptive interval refinement, so
//! no floating-point tolerance exists anywhere in the crate.

pub mod casson_gordon;
pub mod error;
pub mod exact;
pub mod forms;
pub mod homology;
pub mod obstruction;

pub use error::{Error, Result};
pub use exact::Rational;
