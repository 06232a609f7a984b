use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the exact pipeline.
///
/// Variants are grouped by how a front end should treat them:
/// precondition violations (bad mathematical input) versus resource
/// bounds (the input is valid but too large for an exhaustive search).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be rectangular: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must be symmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix is not Hermitian: entry ({i},{j}) is not the conjugate of ({j},{i})")]
    NotHermitian { i: usize, j: usize },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("cyclotomic element of order {q} is not fixed by conjugation")]
    NotReal { q: u64 },
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("r = {r} and q = {q} are not coprime")]
    NotCoprime { r: i64, q: u64 },
    #[error("q must be positive")]
    NonPositiveOrder,
    #[error("q = {q} must be a prime power")]
    NotPrimePower { q: u64 },
    #[error("division by zero cyclotomic element")]
    DivisionByZero,
    #[error("cable must satisfy copies >= |p| and copies = p (mod 2), got p = {p}, copies = {copies}")]
    InvalidCable { p: i64, copies: u64 },
    #[error("cable (p = {p}, copies = {copies}) has no built-in Seifert matrix; supply tabulated signatures")]
    UnsupportedCable { p: i64, copies: u64 },
    #[error("no tabulated signature for lambda = zeta_{q}^{r}")]
    MissingSignature { r: i64, q: u64 },
    #[error("automatic Seifert construction needs a zero off-diagonal linking matrix (components must be split)")]
    LinkedComponents,
    #[error("Seifert metadata inconsistent: size {size} != 2*genus + mu - 1 = {expected}")]
    SeifertMetadata { size: usize, expected: usize },
    #[error("presentation matrix has infinite cokernel (determinant 0), outside the scope of a nonsingular linking form")]
    InfiniteHomology,
    #[error("linking matrix is singular, violating the nonzero-determinant hypothesis")]
    SingularPresentation,
    #[error("character vector is not a character of the presentation: (linking matrix * p)[{index}] != 0 mod q")]
    CharacterNotClosed { index: usize },
    #[error("character is trivial; no covering data to evaluate")]
    TrivialCharacter,
    #[error("no signature or surgery data available for character {context}")]
    MissingCharacterData { context: String },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    GroupOrderBound { order: BigInt, bound: BigInt },
    #[error("gram matrix entry ({i},{j}) has order not dividing lcm of the generator orders")]
    GramEntryOrder { i: usize, j: usize },
    #[error("linking form is singular")]
    SingularForm,
    #[error("{context}")]
    Unsupported { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors about exceeding configured search bounds rather
    /// than about invalid input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::GroupOrderBound { .. })
    }
}
