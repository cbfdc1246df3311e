use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution has no image for variable {0}")]
    UndefinedSubstitution(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a monomial times a product of binomials")]
    NonBinomialDivisor,
    #[error("100 consecutive evaluation points hit a pole")]
    EvaluationExhausted,
    #[error("log of a series whose constant term is not 1")]
    LogOfNonUnit,
    #[error("exp of a series with nonzero constant term")]
    ExpOfNonZeroConstant,
    #[error("series operation needs a finite truncation cap")]
    UncappedSeries,
    #[error("pole at w = 1")]
    PoleAtOne,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("directional probes disagree: {0}")]
    InconsistentDirections(String),
    #[error("direction makes a denominator vanish along the ray")]
    DegenerateDirection,
    #[error("theta nome must have positive valuation")]
    NonPositiveValuation,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
