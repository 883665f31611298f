use thiserror::Error;

/// Errors raised by distribution construction, measure evaluation, lattice
/// enumeration, generators and the estimation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("distribution not normalized: probability mass sums to {sum}, deviation {excess:e} exceeds 1e-9")]
    NotNormalized { sum: f64, excess: f64 },

    #[error("negative probability mass {value} at flat index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("index set must not be empty")]
    EmptyIndexSet,

    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index sets must be pairwise disjoint")]
    OverlappingSets,

    #[error("operation requires at least three variables, got {0}")]
    NeedAtLeastThreeVariables(usize),

    #[error("subset enumeration over {n} variables exceeds the cap of {cap}")]
    SubsetExplosion { n: usize, cap: usize },

    #[error("{what} for n = {n} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("partition is over {0} variables but the table has {1}")]
    SizeMismatch(usize, usize),

    #[error("partitions are not related by a covering (single cell split) relation")]
    NotACoveringEdge,

    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("series has no time steps")]
    EmptySeries,

    #[error("block length {block_len} exceeds series length {len}")]
    BlockTooLong { block_len: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than malformed input.
    pub fn is_cap_violation(&self) -> bool {
        matches!(
            self,
            Error::SubsetExplosion { .. } | Error::TooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
