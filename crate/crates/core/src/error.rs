use thiserror::Error;

/// Errors raised by floerkit computations.
///
/// Variants split into two families: malformed input ([`Error::is_parse_error`])
/// and domain or hypothesis violations on well-formed input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("malformed resolution tree: {0}")]
    MalformedTree(String),

    #[error("division by zero")]
    ZeroDenominator,

    #[error("leading coefficient {0} is not a unit in the coefficient ring")]
    NonUnitLeadingCoefficient(String),

    #[error("odd power z^{0} of the Conway variable in a knot polynomial")]
    Parity(i64),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("{what} = {value} is out of range: {expected}")]
    OutOfRange {
        what: &'static str,
        value: String,
        expected: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("differentials compose to a nonzero map at position {0}")]
    NotAComplex(i64),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("fraction-field rank evaluation did not stabilise after {0} attempts")]
    RetryExhausted(usize),

    #[error("region {0} is not closed under the differential")]
    RegionNotClosed(String),

    #[error("vector {0:?} is not primitive")]
    NonPrimitive([i64; 3]),

    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("spin^c orbit is empty")]
    EmptyOrbit,

    #[error("sign ambiguity: {0}")]
    SignAmbiguity(String),

    #[error("diagram has {0} components, a knot was required")]
    NotAKnot(usize),

    #[error("leaf is not a standard link: {0}")]
    LeafNotStandard(String),

    #[error("resolution tree search exceeded its budget of {0} nodes")]
    TreeBudgetExceeded(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
}

impl Error {
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::MalformedPd(_) | Error::MalformedTree(_)
        )
    }

    pub(crate) fn out_of_range(
        what: &'static str,
        value: impl ToString,
        expected: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            expected: expected.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
