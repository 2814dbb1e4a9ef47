use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular (generator {0})")]
    SingularMatrix(usize),

    #[error("conjugating matrix is singular")]
    SingularConjugator,

    #[error("generator index {index} exceeds tuple rank {rank}")]
    RankMismatch { index: usize, rank: usize },

    #[error("rank {rank} is too small, at least {min} required")]
    RankTooSmall { rank: usize, min: usize },

    #[error("tuple must contain at least one matrix")]
    EmptyTuple,

    #[error("matrix {0} does not have determinant 1")]
    NotUnimodular(usize),

    #[error("generator count formula is not integral at r = {0}")]
    NonIntegral(usize),

    #[error("generator count overflows at r = {0}")]
    Overflow(usize),

    #[error("first matrix has repeated eigenvalues")]
    RepeatedEigenvalues,

    #[error("characteristic polynomial of the first matrix does not split over the rationals")]
    NotSplit,

    #[error("entry ({row},{col}) of the second matrix vanishes after diagonalization")]
    ZeroLowerDiagonal { row: usize, col: usize },

    #[error("cofactor of entry (3,1) in generator {0} vanishes; det = 1 cannot be solved for it")]
    DegenerateConstraint(usize),

    #[error("variable x^{k}_{row}{col} is not a valid coordinate here")]
    InvalidVariable { k: usize, row: usize, col: usize },

    #[error("Jacobian is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("finite-difference step must be positive")]
    InvalidStep,

    #[error("{0}")]
    Parse(String),
}
