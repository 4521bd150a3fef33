use thiserror::Error;

use crate::cell_complex::AxiomViolation;
use crate::linear_quotients::RegularityWitness;
use crate::monomial::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable x{index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("at most {max} variables are supported, got {n}")]
    TooManyVariables { n: usize, max: usize },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("monomials live in different rings ({left} vs {right} variables)")]
    ContextMismatch { left: usize, right: usize },

    #[error("exponent overflow or degree above {max}")]
    DegreeOverflow { max: u64 },

    #[error("colon ideal at step {step} is not linear: minimal generator {generator}")]
    NotLinear { step: usize, generator: Monomial },

    #[error("degree decreases at step {step}")]
    NotDegreeIncreasing { step: usize },

    #[error("order is not a permutation of the minimal generators: {0}")]
    NotPermutation(String),

    #[error("{0} is not in the ideal")]
    NotInIdeal(Monomial),

    #[error("{0} is not a minimal generator")]
    NotAGenerator(Monomial),

    #[error("decomposition function is not regular: {0}")]
    NotRegular(RegularityWitness),

    #[error("variable x{var} is not in the set")]
    VariableNotInSet { var: usize },

    #[error("{what} has size {size}, above the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("boundary maps do not compose to zero in degree {degree}")]
    BoundaryNotComplex { degree: usize },

    #[error("integer overflow during exact elimination")]
    ArithmeticOverflow,

    #[error("simplicial complex is not pure")]
    NotPure,

    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("closure operator violates {0}")]
    ConvexGeometry(AxiomViolation),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
