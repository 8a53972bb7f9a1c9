//! Numeric tolerances shared by the decomposition routines and their checks.
//!
//! All of these sit far below the four printed decimals of the reference
//! tournament tables, so they never decide a golden comparison on their own.

/// Relative off-diagonal Gram entry `|b_p·b_q| / (‖b_p‖‖b_q‖)` below which a
/// column pair counts as orthogonal.
pub const JACOBI: f64 = 1e-12;

/// `‖UᵀU − I‖_F` bound for computed singular vectors.
pub const ORTH: f64 = 1e-9;

/// Relative reconstruction bound, scaled by `max(1, ‖A‖_F)`.
pub const RECON: f64 = 1e-9;

/// Entries smaller than this in magnitude are treated as sign-neutral.
pub const SIGN: f64 = 1e-9;

/// Agreement required against the power-iteration oracle.
pub const ORACLE: f64 = 1e-6;

pub const MAX_SWEEPS: usize = 64;
