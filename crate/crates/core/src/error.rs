use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by severity for the CLI exit-code mapping:
/// input problems, geometric infeasibility, and internal contract
/// violations (which indicate a bug, not a user error).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("failed to parse table JSON: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table vanishes or self-intersects at radius {radius}: {detail} (loop {loop_id})")]
    RadiusTooLarge {
        radius: f64,
        loop_id: usize,
        detail: String,
    },

    #[error("state outside the reduced table: {0}")]
    OutsideTable(String),

    #[error("no collision event found: {0}")]
    NoEvent(String),

    #[error("ball pinned in a corner: consecutive events closer than the minimum flight time")]
    PinnedInCorner,

    #[error("internal contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
