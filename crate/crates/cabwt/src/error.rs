use thiserror::Error;

/// Errors produced by transform construction, queries and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A byte does not belong to the alphabet in use.
    #[error("byte 0x{0:02x} is not in the alphabet")]
    InvalidByte(u8),

    /// A symbol rank is outside `[0, sigma)`.
    #[error("symbol rank {sym} out of range for alphabet of size {sigma}")]
    InvalidSymbol { sym: u32, sigma: usize },

    /// Input string has two equal cyclic rotations.
    #[error("string is not primitive (two cyclic rotations are equal)")]
    NotPrimitive,

    /// The last symbol of the text is not unique.
    #[error("last symbol must occur exactly once in the text")]
    MissingTerminator,

    /// A row index or position fell outside the valid range.
    #[error("index {index} out of range [1, {n}]")]
    OutOfRange { index: usize, n: usize },

    /// The (L, I) pair does not arise from any string under the scheme.
    #[error("invalid transform: {0}")]
    InvalidTransform(&'static str),

    /// An engine was handed a scheme of the wrong kind.
    #[error("scheme kind mismatch: expected a {expected} scheme")]
    SchemeKind { expected: &'static str },

    /// Exhaustive enumeration would exceed the configured budget.
    #[error("oracle enumeration of {combinations} assignments exceeds budget {budget}")]
    OracleBudget { combinations: u128, budget: u64 },

    /// Alphabet too large for the run minimizer.
    #[error("alphabet of size {sigma} exceeds the run-minimizer cap {cap}")]
    SigmaCap { sigma: usize, cap: usize },

    /// The local-engine base-range table would exceed its entry cap.
    #[error("local table of {entries} entries exceeds cap {cap}")]
    TableCap { entries: u128, cap: u64 },

    /// Malformed scheme text.
    #[error("scheme parse error (line {line}): {msg}")]
    SchemeParse { line: usize, msg: String },

    /// Malformed transform container.
    #[error("container format error: {0}")]
    Container(&'static str),
}

impl Error {
    pub(crate) fn scheme_parse(line: usize, msg: impl Into<String>) -> Self {
        Error::SchemeParse {
            line,
            msg: msg.into(),
        }
    }
}
