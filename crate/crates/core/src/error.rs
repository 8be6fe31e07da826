use thiserror::Error;

/// Errors produced by the exact-arithmetic and group machinery.
///
/// The split matters to callers: `Input*` variants signal malformed or
/// inconsistent data, `Unsupported` marks questions the library refuses to
/// decide, and the rest are domain failures of individual operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed incompatible radicands: √{0} vs √{1}")]
    MixedRadicands(u64, u64),

    #[error("radicand {0} is not a square-free integer ≥ 2")]
    BadRadicand(u64),

    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),

    #[error("non-monotone interpolation data: {0}")]
    NonMonotone(String),

    #[error("discontinuity between segments and germs: {0}")]
    Discontinuity(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("map does not preserve the interval: {0}")]
    DoesNotPreserveInterval(String),

    #[error("germ is not a translation (slope {0} ≠ 1)")]
    GermNotTranslation(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("element budget exceeded: {count} canonical elements reached at radius {radius}")]
    BudgetExceeded { count: usize, radius: usize },

    #[error("not a member of the multiplicative group: {0}")]
    NotInSlopeGroup(String),

    #[error("prime factor of {0} exceeds the 64-bit factorization bound")]
    FactorTooLarge(String),

    #[error("incompatible exponent bases")]
    IncompatibleBases,

    #[error("zero character: {0}")]
    ZeroCharacter(String),

    #[error("membership is indeterminate: {0}")]
    Indeterminate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
}
