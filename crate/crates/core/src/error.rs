use thiserror::Error;

pub type Result<T, E = BurnError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BurnError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("work budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("point {point:?} lies outside the grid at time {time}")]
    OutsideGrid { time: u64, point: Vec<i64> },

    #[error("invalid activation of {point:?} at time {time}: already within the burning neighbourhood")]
    InvalidActivation { time: u64, point: Vec<i64> },

    #[error("growth schedule table exhausted at time {0}")]
    ScheduleExhausted(u64),

    #[error("growth is not monotone: {0}")]
    NonMonotoneGrowth(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("activation times must be strictly increasing and at most {horizon}; got {time}")]
    TimeOrder { time: u64, horizon: u64 },

    #[error("the union-of-balls engine requires the free-spread certificate on [{from}, {to}]")]
    NotCertified { from: u64, to: u64 },

    #[error("insufficient data: {0}")]
    Insufficient(String),
}

impl BurnError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        BurnError::InvalidParameter(msg.into())
    }
}
