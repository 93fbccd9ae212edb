use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible jet")]
    NonInvertibleJet,
    #[error("point not general")]
    PointNotGeneral,
    #[error("image dimension deficient")]
    ImageDimensionDeficient,
    #[error("vector not generic")]
    VectorNotGeneric,
    #[error("genericity failure, re-seed: {0}")]
    GenericityFailure(String),
    #[error("methods disagree: {0}")]
    MethodDisagreement(String),
    #[error("no critical tangential defect")]
    NoCriticalDefect,
    #[error("Q_v not single-valued")]
    QvNotSingleValued,
    #[error("hypotheses of the canonical Clifford module violated: {0}")]
    CliffordHypotheses(String),
    #[error("not in Pin")]
    NotInPin,
    #[error("U not null")]
    NotNull,
    #[error("unknown matrix space: {0}")]
    UnknownSpace(String),
    #[error("minor budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
