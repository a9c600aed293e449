use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: ‖H − H*‖_F = {asymmetry:.3e} exceeds {allowed:.3e}")]
    NotHermitian { asymmetry: f64, allowed: f64 },
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("component count mismatch: {left} vs {right}")]
    ComponentCountMismatch { left: usize, right: usize },
    #[error("operator tuple has no components")]
    EmptyTuple,
    #[error("k = {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("declared accumulation set is empty")]
    EmptyAccumulation,
    #[error("accumulation point {index} is not a limit of the tail (distance {distance:.3e} at N = {n})")]
    InvalidAccumulation { index: usize, distance: f64, n: usize },
    #[error("spectral gap {gap:.3e} at position k does not exceed {tol:.3e}")]
    DegenerateGap { gap: f64, tol: f64 },
    #[error("{count} subsets exceed the enumeration cap of {cap}")]
    TooManySubsets { count: u128, cap: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
