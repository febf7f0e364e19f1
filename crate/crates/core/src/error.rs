use thiserror::Error;

use crate::conditions::Condition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("spectrum is not in descending order")]
    NotSorted,

    #[error("cannot parse spectrum {input:?}: {reason}")]
    ParseSpectrum { input: String, reason: String },

    #[error("cannot parse matrix: {0}")]
    ParseMatrix(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("construction preconditions violated: {}", list_conditions(.0))]
    PreconditionViolated(Vec<Condition>),

    #[error("u(sigma) is zero; pattern A is undefined")]
    DegenerateU,

    #[error("pattern B radicand {name} is negative ({value})")]
    NegativeRadicand { name: &'static str, value: f64 },

    #[error("leading cubic coefficient is zero")]
    DegenerateLeadingCoefficient,

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("relative tolerance must be positive and finite")]
    InvalidTolerance,

    #[error("spectrum sum {sum} is not zero")]
    NotTraceZero { sum: f64 },

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("invalid sampling parameter: {0}")]
    InvalidSampleParameter(String),

    #[error("grid must have at least 2 points per axis")]
    GridTooSmall,

    #[error("no feasible grid point for any t value")]
    EmptyGrid,
}

fn list_conditions(conds: &[Condition]) -> String {
    conds
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
