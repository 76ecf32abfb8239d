use std::fmt;

use thiserror::Error;

/// Structural rule a codeword can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeRule {
    /// Fewer than two bits.
    TooShort,
    /// The last two bits are not both ones.
    MissingTerminator,
    /// A pair of adjacent ones before the terminator.
    InteriorAdjacentOnes,
}

impl fmt::Display for CodeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeRule::TooShort => "codeword shorter than two bits",
            CodeRule::MissingTerminator => "codeword does not end in 11",
            CodeRule::InteriorAdjacentOnes => "interior adjacent ones",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter a = {a} is not allowed; codes are defined for a <= -2")]
    InvalidParameter { a: i64 },

    #[error("sequence index must be at least 1")]
    ZeroIndex,

    #[error("sequence index {index} exceeds the 128-bit term cap (largest index {cap})")]
    IndexBeyondCap { index: usize, cap: usize },

    #[error("value must be a positive integer, got {n}")]
    NonPositiveInput { n: u64 },

    #[error("remainder {r} outside [0, {limit}) for a = {a}")]
    RemainderOutOfRange { a: i64, r: i128, limit: i128 },

    #[error("bit string {bits} is not a Zeckendorf representation")]
    NotZeckendorf { bits: String },

    #[error("malformed codeword: {rule} at bit offset {offset}")]
    MalformedCode { rule: CodeRule, offset: usize },

    #[error("codeword value {value} is not positive")]
    NonPositiveValue { value: i128 },

    #[error("decoded value {value} does not fit in 64 bits")]
    ValueOverflow { value: i128 },

    #[error("invalid character {ch:?} at offset {offset}; expected '0' or '1'")]
    InvalidBitChar { ch: char, offset: usize },

    #[error("arithmetic overflow while evaluating a bit string")]
    Overflow,

    #[error("oracle search bound {bound} exceeds the configured cap {cap}")]
    SearchBoundExceeded { bound: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
