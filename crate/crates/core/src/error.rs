use thiserror::Error;

use crate::numeric::Rational;

/// Broad class of an [`Error`], used by front ends to map failures onto
/// exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    /// Malformed textual input (rational literals and the like).
    Parse,
    /// Structurally invalid input: a value that violates a type invariant.
    Validation,
    /// A well-formed value outside the domain of the requested operation.
    Domain,
    /// A configured resource bound was exceeded.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational literal {0:?}")]
    InvalidRational(String),
    #[error("interval lower end {lo} exceeds upper end {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },
    #[error("open interval ({lo}, {hi}) is empty")]
    EmptyOpenInterval { lo: Rational, hi: Rational },
    #[error("interval union is not contained in [{lo}, {hi}]")]
    NotContained { lo: Rational, hi: Rational },

    #[error("term {index} is {value}, terms must be positive")]
    NonPositiveTerm { index: usize, value: Rational },
    #[error("term {index} is larger than term {prev}", prev = index - 1)]
    NotNonIncreasing { index: usize },
    #[error("tail starts with {tail_first}, above the last prefix term {last}")]
    JunctionViolation { last: Rational, tail_first: Rational },
    #[error("geometric first term must be positive, got {0}")]
    InvalidGeometricFirst(Rational),
    #[error("geometric ratio must lie strictly between 0 and 1, got {0}")]
    InvalidRatio(Rational),
    #[error("radix tail scale must be positive, got {0}")]
    InvalidScale(Rational),
    #[error("radix {value} at position {index} is below 2")]
    InvalidRadix { index: usize, value: u32 },
    #[error("radix word has an empty period and describes a finite sequence")]
    FiniteWord,
    #[error("radix word ends after {len} radices")]
    WordExhausted { len: usize },
    #[error("sequence indices start at 1")]
    ZeroIndex,
    #[error("index {index} is outside the support of a sequence with {len} terms")]
    OutOfSupport { index: usize, len: usize },

    #[error("factor {index} has dimension 0")]
    ZeroDimension { index: usize },
    #[error("factor {index} has non-positive weight {weight}")]
    NonPositiveWeight { index: usize, weight: Rational },
    #[error("weights sum to {total}, a tracial state needs total 1")]
    WeightsNotNormalized { total: Rational },
    #[error("unsupported algebra: {0}")]
    UnsupportedSpec(String),

    #[error("{value} lies outside [{lo}, {hi}]")]
    OutOfRange { value: Rational, lo: Rational, hi: Rational },
    #[error("bit {index} is {value}, bits must be 0 or 1")]
    InvalidBit { index: usize, value: u8 },
    #[error("index {index} does not violate the completeness condition")]
    NotAViolation { index: usize },
    #[error("sequence is not in K: condition fails at index {index}")]
    NotInK { index: usize },
    #[error("sequence does not start with {expected} copies of 1/{radix}")]
    NotInFace { radix: u32, expected: u32 },
    #[error("digit {digit} at position {index} exceeds radix {radix} minus one")]
    DigitTooLarge { index: usize, digit: u32, radix: u32 },

    #[error("{len} terms exceed the subset-sum bound of {limit}")]
    TooManyTerms { len: usize, limit: usize },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidRational(_) => ErrorKind::Parse,
            ZeroDenominator
            | InvalidInterval { .. }
            | EmptyOpenInterval { .. }
            | NonPositiveTerm { .. }
            | NotNonIncreasing { .. }
            | JunctionViolation { .. }
            | InvalidGeometricFirst(_)
            | InvalidRatio(_)
            | InvalidScale(_)
            | InvalidRadix { .. }
            | ZeroDimension { .. }
            | NonPositiveWeight { .. }
            | WeightsNotNormalized { .. }
            | InvalidBit { .. } => ErrorKind::Validation,
            NotContained { .. }
            | FiniteWord
            | WordExhausted { .. }
            | ZeroIndex
            | OutOfSupport { .. }
            | UnsupportedSpec(_)
            | OutOfRange { .. }
            | NotAViolation { .. }
            | NotInK { .. }
            | NotInFace { .. }
            | DigitTooLarge { .. } => ErrorKind::Domain,
            TooManyTerms { .. } => ErrorKind::Resource,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
