use thiserror::Error;

/// Errors raised by constructors and checked operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square or has out-of-range entries: {0}")]
    BadTable(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("element {0} is not central of order at most 2")]
    BadZ(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("{1} is not a multiple of {0}")]
    NotAMultiple(u32, u32),
    #[error("sqrt({n}) needs conductor divisible by {required}, got {m}")]
    ConductorTooSmall { n: u64, m: u32, required: u32 },
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not a group homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("degenerate pairing between invariant spaces")]
    DegeneratePairing,
    #[error("group has no distinguished central element z")]
    ZMissing,
    #[error("no irreducible representations for the centralizer of element {0}")]
    MissingCentralizerZoo(usize),
    #[error("bundle is zero")]
    NotNonzero,
    #[error("label sets differ")]
    LabelMismatch,
    #[error("bad label file: {0}")]
    BadLabelFile(String),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("bad zoo: {0}")]
    BadZoo(String),
    #[error("invalid bundle: {0}")]
    BadBundle(String),
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
