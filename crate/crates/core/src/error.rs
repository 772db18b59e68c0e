use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is not valid for series {series}")]
    InvalidRank { series: char, rank: usize },

    #[error("node {node} is out of range 1..={rank}")]
    InvalidNode { node: usize, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i64>),

    #[error("coordinate vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("vertex {vertex} is out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("{lie_type} is outside the table range: {reason}")]
    OutsideTableRange { lie_type: String, reason: String },

    #[error("representation space dimension {dim} exceeds the size guard {guard}")]
    SizeGuard { dim: u64, guard: u64 },

    #[error("work budget of {limit} units exhausted")]
    BudgetExceeded { limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Counter for budgeted computations. Every unit of work ticks it once;
/// exceeding the limit aborts the computation with `Error::BudgetExceeded`.
#[derive(Debug, Clone)]
pub struct WorkCounter {
    used: u64,
    limit: u64,
}

impl WorkCounter {
    pub fn with_limit(limit: u64) -> Self {
        WorkCounter { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        WorkCounter {
            used: 0,
            limit: u64::MAX,
        }
    }

    pub fn tick(&mut self, units: u64) -> Result<()> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
