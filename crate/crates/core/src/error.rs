use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    SpecMismatch(String),

    #[error("series has a nonzero constant term; composition would not terminate")]
    NonNilpotentArgument,

    #[error("not a unit: {0}")]
    NotUnit(String),

    /// A claimed divisibility failed. In a verification run this means the
    /// identity being checked is false, not that the input was malformed.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("not symmetric: coefficient of {left} is {left_coeff} but of {right} is {right_coeff}")]
    NotSymmetric { left: String, left_coeff: String, right: String, right_coeff: String },

    #[error("exponent {0} is above the series cap {1}")]
    AboveCap(String, String),

    #[error("infinite product factor violates the leading-term contract: {0}")]
    BadFactor(String),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
