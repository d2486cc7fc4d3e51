use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact")]
    DivisionNotExact,
    #[error("({0}, {1}) is not a root of sl({2})")]
    NotARoot(usize, usize, usize),
    #[error("Gram matrix of the given basis is singular")]
    DegenerateSubspace,
    #[error("T is not a bijection from gamma1 to gamma2: {0}")]
    NotBijection(String),
    #[error("T does not preserve the inner product of alpha{0} and alpha{1}")]
    InnerProductViolation(usize, usize),
    #[error("n = {0} exceeds the enumeration bound {1}")]
    BoundExceeded(usize, usize),
    #[error("T has no orthogonal extension to h fixing l")]
    InconsistentExtension,
    #[error("singular linear system while computing {0}")]
    SingularSystem(&'static str),
    #[error("the equations for s have no solution")]
    NoSolution,
    #[error("triple is not nilpotent")]
    NotNilpotent,
    #[error("exponent {0} is not an integer combination of the dynamical variables")]
    ExponentNotRepresentable(String),
    #[error("T^{1} of root {0} is undefined")]
    UndefinedPower(String, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
