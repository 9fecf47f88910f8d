use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec {0:?}: {1}")]
    RingSpec(String, &'static str),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("component index {index} out of range for a ring with {len} components")]
    ComponentIndex { index: usize, len: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("value {value} out of range for component of order {order}")]
    ResidueOutOfRange { value: u64, order: u64 },
    #[error("ring components are not pairwise coprime; no single-integer form exists")]
    NonCoprimeComponents,
    #[error("matrix rows are not unimodular (McCoy rank {rank} < {rows})")]
    NotFullRank { rank: usize, rows: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("linear subset is not a free subspace")]
    NotASubspace,
    #[error("dimension formula does not hold for this pair")]
    HypothesisNotMet,
    #[error("subspace meets E in a non-free module")]
    Untyped,
    #[error("point set is not an arc")]
    NotAnArc,
    #[error("point set is not a cap")]
    NotACap,
    #[error("two points coincide after projection to component {0}")]
    PointCollision(usize),
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Format(String),
}
