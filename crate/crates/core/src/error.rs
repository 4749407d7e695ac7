use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("{0} exceeds the 64-bit range supported by the primality test")]
    PrimeTooLarge(String),

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),

    #[error("modulus {0} must be at least 2")]
    ModulusTooSmall(String),

    #[error("length mismatch: {0} residues vs {1} moduli")]
    LengthMismatch(usize, usize),

    #[error("{m} does not divide {p} - 1")]
    OrderDoesNotDivide { m: String, p: String },

    #[error("negative input {0}")]
    Negative(String),

    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("leading coefficient is not invertible in the coefficient ring")]
    NonInvertibleLeading,

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("quadratic elements have different discriminants")]
    MixedDiscriminant,

    #[error("parameter {0} must be nonconstant")]
    ConstantParameter(String),

    #[error("negative power of an element whose norm is {0}, not 1")]
    NonUnitPower(String),

    #[error("the Pell identity f^2 - (s^2 - 1) g^2 = 1 fails")]
    PellIdentityFails,

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("polynomial has a root in the fraction field: {0}")]
    HasRoot(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search exhausted: {0}")]
    Exhausted(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown system id {0}")]
    UnknownSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
