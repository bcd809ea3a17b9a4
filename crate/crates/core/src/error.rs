use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("series constant term must be 1 for square root")]
    NonUnitConstant,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not revertible (needs f_0 = 0 and f_1 = 1)")]
    NotRevertible,
    #[error("singular curve (discriminant is zero)")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("insufficient order: need {needed}, have {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("insufficient terms: need {needed}, have {available}")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("continued fraction depth {depth} is too small for order {order}")]
    InsufficientDepth { depth: usize, order: usize },
    #[error("zero lambda at index {index}; depth achieved {achieved}")]
    ZeroLambda { index: usize, achieved: usize },
    #[error("multiple {multiple}P is the point at infinity")]
    TorsionDepth { multiple: usize },
    #[error("multiple {multiple}P has zero x-coordinate")]
    ZeroXCoordinate { multiple: usize },
    #[error("path search space too large for n = {n} (limit {limit})")]
    SearchSpaceTooLarge { n: usize, limit: usize },
    #[error("step ({dx},{dy}) outside the supported set dx in {{1,2}}, dy in {{-1,0,1}}")]
    InvalidStep { dx: i64, dy: i64 },
    #[error("formula term needs a negative exponent at n = {n}")]
    FormulaDomainError { n: usize },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
