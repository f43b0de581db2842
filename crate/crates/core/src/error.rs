use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed field: {0}")]
    MalformedField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor and has no inverse")]
    NotInvertible,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{found} coefficients given but the field has degree {degree}")]
    DegreeOverflow { found: usize, degree: usize },
    #[error("index {index} out of range for factor {factor} of dimension {dim}")]
    Index { index: usize, factor: String, dim: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("antipode is not bijective")]
    AntipodeNotBijective,
    #[error("entwining map is not bijective")]
    PsiNotBijective,
    #[error("coaction does not make A a comodule algebra: {0}")]
    NotComoduleAlgebra(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("not a Galois extension: {0}")]
    NotGalois(String),
    #[error("the coaction of the unit is not 1 tensor a grouplike")]
    NoGrouplikeUnit,
    #[error("subalgebra is not a left coideal (Delta(B) not in A(x)B): {0}")]
    NotHomogeneous(String),
    #[error("B+A is not a coideal: {0}")]
    NotCoideal(String),
    #[error("iota is not a bicolinear section: {0}")]
    IotaNotBicolinear(String),
    #[error("problem too large: {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("stage dependency error: {0}")]
    Dependency(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
