use thiserror::Error;

/// Errors raised by the toolkit. Verification failures are never errors;
/// they are reported through the report types in [`crate::verify`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph6: malformed header byte {byte:#04x} at offset {offset}")]
    Graph6Header { byte: u8, offset: usize },
    #[error("graph6: truncated bit stream (expected {expected} data bytes, found {found})")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("graph6: character {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    Graph6Character { byte: u8, offset: usize },
    #[error("graph6: trailing data after {expected} data bytes")]
    Graph6Trailing { expected: usize },
    #[error("graph6: empty input")]
    Graph6Empty,

    #[error("vertex count {n} exceeds the cap of {cap} for {what}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("basis element {0} is zero")]
    ZeroBasisElement(usize),
    #[error("basis elements {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("rational denominator grew to {bits} bits (cap {cap})")]
    DenominatorOverflow { bits: u64, cap: u64 },
    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("invalid conic problem: {0}")]
    InvalidProblem(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("trace of {0} is zero")]
    ZeroTrace(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
