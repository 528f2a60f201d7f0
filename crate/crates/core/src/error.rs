use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variants that "must not occur" (`ConstructionFailure`, `NonIntegralQuotient`)
/// indicate an internal inconsistency rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("field of order {p}^{f} is too large")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("{0} is not a valid Frobenius base for this field")]
    InvalidTowerBase(u64),
    #[error("GF({sub}) is not a subfield of GF({target})")]
    NotASubfield { sub: u64, target: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroElement,
    #[error("field of order {0} has no log tables")]
    FieldTooLargeForTables(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element order exceeds the supplied bound")]
    OrderExceedsBound,
    #[error("matrix is not in the Singer normalizer")]
    NotInNormalizer,
    #[error("internal construction failure: {0}")]
    ConstructionFailure(String),
    #[error("enumeration of {what} would need {size} elements (cap {cap})")]
    EnumerationTooLarge {
        what: String,
        size: String,
        cap: u64,
    },
    #[error("{r} and {q} are not coprime")]
    NotCoprime { r: u64, q: u64 },
    #[error("non-integral quotient in class size model: {0}")]
    NonIntegralQuotient(String),
    #[error("eta has no root in (0,1): {0}")]
    NoRootInUnitInterval(String),
    #[error("enumeration exceeded cap {0}")]
    CapExceeded(u64),
    #[error("witness search failed after {budget} candidates (seed {seed})")]
    WitnessSearchFailed { seed: u64, budget: u64 },
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("q = {0} is not supported here")]
    UnsupportedQ(u64),
    #[error("index {0} exceeds the coset limit")]
    TooManyCosets(u64),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
