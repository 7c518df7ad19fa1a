use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("reduction did not terminate within {passes} passes")]
    NonTerminating { passes: usize },
    #[error("word `{0}` admits fewer than two distinct one-step reductions")]
    NoOverlap(String),
    #[error("rule {pattern} is not compatible with the word order: `{monomial}` is not below it")]
    IncompatibleRule { pattern: String, monomial: String },
    #[error("polynomial has degree zero; need at least one positive-degree coefficient")]
    DegreeZero,
    #[error("value outside its domain: {0}")]
    DomainError(String),
    #[error("alpha must lie in the open interval (0, 2*mu/M) = (0, {upper})")]
    AlphaOutOfRange { upper: String },
    #[error("constraint is not regular: {0}")]
    NotRegular(String),
    #[error("ellipse does not meet the axes (c < mu^2 cos^2 theta)")]
    NoRealCrossing,
    #[error("weight e_{index} = {value} is not positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("no root of cos(n theta) + (mu/sqrt c) cos(theta) in (0, pi/(n+1)]")]
    NoRoot,
    #[error("string parameters violate both the spherical and critical-toral windows")]
    WindowViolation,
    #[error("mu must be non-negative for a degenerate representation, got {0}")]
    NegativeMu(f64),
    #[error("graph and diagonal data disagree: {0}")]
    InconsistentGraph(String),
    #[error("matrix is not in block-cyclic loop form")]
    NotBlockCyclic,
    #[error("representation is not a single loop")]
    NotSingleLoop,
    #[error("cannot compare a loop with a string")]
    MixedKinds,
    #[error("matrix is not hermitian (relative defect {0:e})")]
    NotHermitian(f64),
    #[error("interval holds fewer than six eigenvalues")]
    TooFewEigenvalues,
    #[error("total degree {0} exceeds the supported bound")]
    DegreeTooHigh(u32),
    #[error("matrix size must be at least 5, got {0}")]
    NTooSmall(usize),
    #[error("square root of negative diagonal entry {0}")]
    ComplexSqrt(f64),
    #[error("parameters are outside the toral regime required for the comparison")]
    RegimeMismatch,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
