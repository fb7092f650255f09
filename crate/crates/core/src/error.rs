use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no simple Lie algebra of type ({family}, {rank})")]
    InvalidType { family: char, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("not finite type: root closure exceeded height cap {cap}")]
    NotFiniteType { cap: i64 },

    #[error("Weyl group too large: order exceeds weyl_order_cap = {cap}")]
    WeylGroupTooLarge { cap: usize },

    #[error("{system} needs the slow tier for Weyl-group sums (|W| = {order})")]
    SlowTierRequired { system: String, order: u64 },

    #[error("partition enumeration exceeded partition_cap = {cap}")]
    PartitionCapExceeded { cap: usize },

    #[error("simple-root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("exponent of height {height} lies outside truncation height {trunc}")]
    OutOfTruncation { height: i64, trunc: i64 },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("malformed Kostka-Foulkes polynomial: {0}")]
    MalformedKostka(String),

    #[error("root height counts not weakly decreasing: a_{index} = {lower} < a_{next} = {upper}", next = .index + 1)]
    NonMonotoneHeights {
        index: usize,
        lower: usize,
        upper: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// True for the errors raised when a configured size cap is hit.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::NotFiniteType { .. }
                | Error::WeylGroupTooLarge { .. }
                | Error::PartitionCapExceeded { .. }
                | Error::SlowTierRequired { .. }
        )
    }
}
