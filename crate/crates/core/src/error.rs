use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision {0} bits is below the minimum of 64")]
    PrecisionTooLow(u32),

    #[error("log needs constant term 1, found {0}")]
    LogConstantTerm(String),

    #[error("exp needs constant term 0, found {0}")]
    ExpConstantTerm(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient {0} is not a unit")]
    NotAUnit(String),

    #[error("genus must be at least {min}, got {got}")]
    GenusOutOfRange { got: u32, min: u32 },

    #[error("sequence computed only to g = {have}, need g = {need}")]
    NotComputed { have: u32, need: u32 },

    #[error("oracle mismatch at g = {g} ({which}): solver {solver}, oracle {oracle}")]
    OracleMismatch {
        g: u32,
        which: &'static str,
        solver: Box<Rational>,
        oracle: Box<Rational>,
    },

    #[error("zero diagonal entry in row {0} of the triangular system")]
    ZeroDiagonal(usize),

    #[error("expansion coefficient c{index} = {value} has a negative power of pi")]
    NegativePiPower { index: usize, value: String },

    #[error("need at least {need} data points for a slope fit, got {got}")]
    TooFewPoints { got: usize, need: usize },

    #[error("residual at g = {g} is not finite and positive: {value}")]
    BadResidual { g: u32, value: f64 },
}
