//! Singular value decomposition analysis of round-robin tournaments.
//!
//! A tournament's goals form an offense/defense performance matrix `A`
//! (entry `(i, j)` is the goals team `i` scored against team `j`). Its SVD
//! yields offense and defense ratings, a rank-one score prediction, a
//! second-order correction, and polar factors describing two hypothetical
//! all-draw tournaments. Official points standings with the full tie-break
//! cascade are computed alongside.

pub mod analysis;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod polar;
pub mod report;
pub mod standings;
pub mod tournament;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, SvdResult};
pub use tournament::{PerformanceMatrix, Tournament};
