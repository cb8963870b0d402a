use thiserror::Error;

/// Reasons an instance, a parameter set or a solution file is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing pallet definition")]
    MissingPallet,
    #[error("pallet {field} must be positive")]
    NonPositivePallet { field: &'static str },
    #[error("unit `{id}`: dimension {field} must be positive")]
    NonPositiveDimension { id: String, field: &'static str },
    #[error("duplicate unit id `{0}`")]
    DuplicateId(String),
    #[error("unit `{id}`: order_index {found} does not match its position {expected}")]
    OrderIndex { id: String, expected: usize, found: usize },
    #[error("parameter {field}: {reason}")]
    InvalidParam { field: &'static str, reason: String },
    #[error("instance has no units")]
    NoUnits,
    #[error("solution references unknown unit `{0}`")]
    UnknownUnit(String),
}

/// Failures of the brute-force reference implementations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("voxel grid of {0} cells exceeds the oracle limit")]
    ResolutionOverflow(u64),
    #[error("geometry is not aligned to the voxel resolution {0}")]
    Misaligned(u32),
    #[error("knapsack table of {0} entries exceeds the oracle limit")]
    CapacityOverflow(u64),
    #[error("instance has {units} units, oracle limit is {limit}")]
    TooLarge { units: usize, limit: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
