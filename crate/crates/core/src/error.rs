use thiserror::Error;

pub type Result<T> = std::result::Result<T, BoundsError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{what} = {value} is out of range: {expected}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("invalid moment specification: {0}")]
    InvalidSpec(String),
    #[error("degenerate strike: {0}")]
    Degenerate(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid oracle problem: {0}")]
    InvalidProblem(String),
    #[error("no grid-supported distribution satisfies the constraints")]
    Infeasible,
    #[error("every candidate support system is singular or ill-conditioned ({skipped} skipped)")]
    IllConditioned { skipped: usize },
}

impl BoundsError {
    pub(crate) fn out_of_range(what: &'static str, value: f64, expected: &'static str) -> Self {
        BoundsError::OutOfRange {
            what,
            value,
            expected,
        }
    }
}
