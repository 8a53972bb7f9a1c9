//! Small dense real linear algebra: matrix arithmetic, Frobenius norm and a
//! Jacobi SVD. No external numeric dependencies.

mod matrix;
mod svd;
pub mod tol;

pub use matrix::{frobenius_norm, matmul, DenseMatrix};
pub use svd::{rank_one, sign_normalize, svd, svd_with_max_sweeps, truncated_sum, SvdResult};
