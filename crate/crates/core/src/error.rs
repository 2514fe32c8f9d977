use thiserror::Error;

/// Errors raised by the p-adic arithmetic, operator and state layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precision {0} is below the minimum of 5 digits")]
    PrecisionTooSmall(u32),
    #[error("p^N = {p}^{precision} does not fit in 63 bits")]
    PrecisionTooLarge { p: u64, precision: u32 },
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("cancellation consumed every carried digit; raise the precision")]
    PrecisionExhausted,
    #[error("division by zero")]
    DivisionByZero,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("value is not a square in Q_p")]
    NotASquare,
    #[error("operation is not available for p = 2")]
    UnsupportedForP2,
    #[error("mu is a square in Q_p, so Q_p(sqrt mu) is not a field extension")]
    MuIsSquare,
    #[error("the construction requires an odd prime")]
    RequiresOddP,
    #[error("invalid basis rotation: {0}")]
    InvalidRotation(String),
    #[error("coefficient search exhausted without a witness; raise the bound")]
    SearchBoundExceeded,
    #[error("vector list is empty")]
    EmptyList,
    #[error("vector support reaches index {index}, outside the materialized window {window}")]
    OutsideWindow { index: usize, window: usize },
    #[error("operator is not block-finite")]
    NotBlockFinite,
    #[error("operator is not adjointable: {0}")]
    NotAdjointable(String),
    #[error("decay certificate cannot exclude a tail entry larger than the window maximum")]
    TailDominates,
    #[error("operator is not trace class: {0}")]
    NotTraceClass(String),
    #[error("tail of the trace series is not bounded by the certificate")]
    TailNotBounded,
    #[error("entry ({row}, {col}) violates the declared decay certificate")]
    InvalidCertificate { row: usize, col: usize },
    #[error("operator is not self-adjoint: entry ({row}, {col}) differs from the conjugate of ({col}, {row})")]
    NotSelfAdjoint { row: usize, col: usize },
    #[error("four-squares search found no admissible representation")]
    SearchExhausted,
    #[error("coefficients do not sum to 1")]
    SumNotOne,
    #[error("trace is not 1")]
    TraceNotOne,
    #[error("trace is not 0")]
    TraceNotZero,
    #[error("effects do not sum to the identity")]
    SumNotIdentity,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("normalizer of the simple operator vanishes")]
    DegenerateNormalizer,
    #[error("value has a nonzero anticonjugate coordinate where Q_p was expected")]
    NotInBaseField,
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// A stable snake_case identifier for scripts.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(..) => "not_prime",
            Error::PrecisionTooSmall(..) => "precision_too_small",
            Error::PrecisionTooLarge { .. } => "precision_too_large",
            Error::ContextMismatch => "context_mismatch",
            Error::PrecisionExhausted => "precision_exhausted",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroInput => "zero_input",
            Error::NotASquare => "not_a_square",
            Error::UnsupportedForP2 => "unsupported_for_p2",
            Error::MuIsSquare => "mu_is_square",
            Error::RequiresOddP => "requires_odd_p",
            Error::InvalidRotation(..) => "invalid_rotation",
            Error::SearchBoundExceeded => "search_bound_exceeded",
            Error::EmptyList => "empty_list",
            Error::OutsideWindow { .. } => "outside_window",
            Error::NotBlockFinite => "not_block_finite",
            Error::NotAdjointable(..) => "not_adjointable",
            Error::TailDominates => "tail_dominates",
            Error::NotTraceClass(..) => "not_trace_class",
            Error::TailNotBounded => "tail_not_bounded",
            Error::InvalidCertificate { .. } => "invalid_certificate",
            Error::NotSelfAdjoint { .. } => "not_self_adjoint",
            Error::SearchExhausted => "search_exhausted",
            Error::SumNotOne => "sum_not_one",
            Error::TraceNotOne => "trace_not_one",
            Error::TraceNotZero => "trace_not_zero",
            Error::SumNotIdentity => "sum_not_identity",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegenerateNormalizer => "degenerate_normalizer",
            Error::NotInBaseField => "not_in_base_field",
            Error::Malformed(..) => "malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
