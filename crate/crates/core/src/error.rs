use alloc::string::String;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse partition token `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("partitions have different totals ({left} vs {right})")]
    TotalMismatch { left: usize, right: usize },

    #[error("part count {k} is outside 1..={n}")]
    PartCountOutOfRange { n: usize, k: usize },

    #[error("partition {partition} has no part of size {p}")]
    PartAbsent { partition: Partition, p: usize },

    #[error("partition must be nonempty")]
    EmptyPartition,

    #[error("vertex {0} is not in the poset")]
    VertexNotFound(String),

    #[error("matrix is not nilpotent: rank stops decreasing at power {power} (rank {rank})")]
    NotNilpotent { power: usize, rank: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),

    #[error("partition {0} is not stable (parts must differ pairwise by at least 2)")]
    NotStable(Partition),

    #[error("{what} exceeds limit {limit} (got {got})")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("field characteristic {q} must exceed n = {n}")]
    CharacteristicTooSmall { q: u64, n: usize },

    #[error("sample count must be at least 1")]
    NoSamples,

    /// A sampled centralizer element failed `B^n = 0`.
    #[error("internal guard: sampled commuting matrix for {partition} is not nilpotent (seed {seed:#x})")]
    NilpotencyGuard { partition: Partition, seed: u64 },

    #[error("internal guard: sampled matrix for {partition} does not commute with its Jordan matrix (seed {seed:#x})")]
    CommutationGuard { partition: Partition, seed: u64 },

    #[error("internal guard: sampled types {a} and {b} are dominance-incomparable")]
    IncomparableSamples { a: Partition, b: Partition },
}

pub type Result<T> = core::result::Result<T, Error>;
