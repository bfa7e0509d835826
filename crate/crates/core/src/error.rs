use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("no embedding: degree {from} does not divide {to}")]
    NoEmbedding { from: usize, to: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("precision underflow: {0}")]
    PrecisionUnderflow(String),
    #[error("target degree {target} below polynomial degree {actual}")]
    DegreeTooSmall { target: usize, actual: usize },
    #[error("series is not a unit")]
    NotAUnit,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero element has no initial form")]
    ZeroElement,
    #[error("edge is not on the Newton polygon")]
    EdgeNotOnPolygon,
    #[error("initial form is not polynomial in y")]
    UnboundedInitial,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("center is not on the curve")]
    CenterNotOnCurve,
    #[error("precision cap exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("divisors belong to different curves")]
    CurveMismatch,
    #[error("numerator and denominator degrees differ")]
    DegreeMismatch,
    #[error("both derivatives of a parametrization vanish")]
    WildDerivativeZero,
    #[error("adjoint divisor has inconsistent degree {0}")]
    AdjointParity(i64),
    #[error("curve is not irreducible: {0}")]
    CurveNotIrreducible(String),
    #[error("duplicate points")]
    DuplicatePoints,
    #[error("evaluation point is a zero of the denominator")]
    PointOnDenominator,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("dimension k exceeds the number of points")]
    KTooLarge,
    #[error("too few shares")]
    TooFewShares,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
