use thiserror::Error;

/// Errors reported by the semigroup computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must have positive dimensions (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("cone generated by the columns is not pointed")]
    NotPointed,

    #[error("matrix does not have full row rank (rank {rank}, {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    /// A configured ceiling was hit; the computation stopped without an answer.
    #[error("resource limit exhausted: {resource} exceeded {limit}")]
    ResourceExhausted { resource: &'static str, limit: u64 },

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn exhausted(resource: &'static str, limit: impl TryInto<u64>) -> Self {
        Error::ResourceExhausted {
            resource,
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }

    pub fn is_resource_exhausted(&self) -> bool {
        matches!(self, Error::ResourceExhausted { .. })
    }
}
