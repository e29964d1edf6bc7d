use thiserror::Error;

/// Errors surfaced by the exact-arithmetic kernel and the model builders.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("repeated index {0} in permutation")]
    RepeatedIndex(usize),
    #[error("element is not homogeneous (degrees {0} and {1})")]
    NotHomogeneous(i64, i64),
    #[error("element has exterior factors but a polynomial one was required")]
    NotPolynomial,
    #[error("polynomial generator `{0}` has degree 0: graded pieces are infinite")]
    ZeroDegreeGenerator(String),
    #[error("polynomial generators must all have degrees of one sign (found {0} and {1})")]
    MixedDegreeSigns(i64, i64),
    #[error("expected a homogeneous element of degree {expected}, got degree {got}")]
    WrongDegree { expected: i64, got: i64 },
    #[error("elements of mixed degrees passed to the linear solver")]
    MixedDegrees,
    #[error("{0} is not prime or zero")]
    NotPrime(u32),
    #[error("generator `{name}`: {reason}")]
    BadGenerator { name: String, reason: String },
    #[error("square rule for `{name}`: {reason}")]
    BadSquareRule { name: String, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("presentation: {0}")]
    Presentation(String),
    #[error("operation requires hypothesis (H) (p odd, p = 0, or vanishing top Steenrod squares)")]
    RequiresHypothesisH,
    #[error("operation is only defined mod 2")]
    RequiresMod2,
    #[error("unknown check name `{0}`")]
    UnknownCheck(String),
    #[error("hochschild: {0}")]
    Hochschild(String),
    #[error("isomorphism search: {0}")]
    Iso(String),
    #[error("transport: {0}")]
    Transport(String),
}
