//! Nonnegative big-integer transition matrices.
//!
//! Graph questions (irreducibility, periods, cover times) are answered on the
//! boolean support digraph; [`IntMatrix`] powers are only used where a
//! positivity certificate is needed.

mod analysis;
mod block;
mod matrix;
pub mod parse;
pub mod random;

use thiserror::Error;

pub use analysis::{
    is_irreducible, min_positive_diagonal_power, pf_eigenvalue_estimate, primitivity_exponent,
    wielandt_bound, PfEstimate, Primitivity,
};
pub use block::{compute_k, cover_time, product_lower_right, BlockTransition, SpreadCertificate};
pub use matrix::{BoolMatrix, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix has no rows or columns")]
    Empty,
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("block-zero condition violated at ({row}, {col}): real rows must vanish on infinitesimal columns")]
    BlockZero { row: usize, col: usize },
    #[error("real index set is invalid: {0}")]
    RealSet(String),
    #[error("real branch count {real} exceeds 3|chi|-3 = {limit}")]
    TooManyReal { real: usize, limit: i64 },
    #[error("branch count {total} exceeds 9|chi|-3n = {limit}")]
    TooManyBranches { total: usize, limit: i64 },
    #[error("surface: {0}")]
    Surface(#[from] crate::surface::SurfaceError),
    #[error("not a BH transition structure: branches {uncovered:?} are never spread over by every real branch within {steps} extra steps")]
    NotBhStructure { uncovered: Vec<usize>, steps: usize },
    #[error("spread certificate failed: (M^{k})[{row}][{col}] = 0")]
    CertificateFailed { k: u64, row: usize, col: usize },
}
