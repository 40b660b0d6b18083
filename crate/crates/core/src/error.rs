use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator vanished at the chosen modular point; pick another point.
    #[error("bad evaluation point: q = {qpoint} mod {prime}")]
    BadEvaluationPoint { prime: u64, qpoint: u64 },

    #[error("all {attempts} modular evaluation points were rejected")]
    AllPointsRejected { attempts: usize },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("weight mismatch: partition of {partition} used with k = {k}")]
    WeightMismatch { partition: usize, k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("convention self-test failed: {0}")]
    ConventionSelfTest(String),

    #[error("memory budget exceeded: need ~{needed} bytes, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("check {check} failed: {detail}")]
    CheckFailed { check: String, detail: String },

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
