use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence length must be at least 1 (got {0})")]
    EmptyLength(u64),

    #[error("no samples have been pushed; the weighted sum is undefined for N = 0")]
    NoSamples,

    #[error("coefficient set is for power {expected}, cascade has power {actual}")]
    PowerMismatch { expected: usize, actual: usize },

    #[error("coefficient set is for N = {expected}, cascade has seen {actual} samples")]
    LengthMismatch { expected: u64, actual: u64 },

    #[error("requested power {requested} exceeds cascade power {available}")]
    PowerTooLarge { requested: usize, available: usize },

    #[error("addition-chain target {0} is outside the supported range 1..=64")]
    ChainTarget(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
