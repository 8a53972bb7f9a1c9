//! Polar factors of the performance matrix, read off its SVD:
//! `A = (UDUᵀ)(UVᵀ) = (UVᵀ)(VDVᵀ)`.
//!
//! `P = UDUᵀ` is the tournament in which every team's defense attributes are
//! replaced by its offense attributes; `Q = VDVᵀ` the reverse. Both are
//! symmetric, so every hypothetical match ends in a draw.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SvdResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarFactors {
    /// `UDUᵀ`
    pub p: DenseMatrix,
    /// `VDVᵀ`
    pub q: DenseMatrix,
    /// `UVᵀ`, orthogonal.
    pub w: DenseMatrix,
    /// Set when `A` is rank deficient; `P` and `Q` are then only
    /// positive semidefinite.
    pub semidefinite: bool,
}

pub fn polar_factors(s: &SvdResult) -> Result<PolarFactors> {
    let n = s.nrows();
    if n != s.ncols() {
        return Err(Error::Shape(format!(
            "polar factors need a square matrix, got {n}x{}",
            s.ncols()
        )));
    }
    let u = s.u_matrix();
    let v = s.v_matrix();
    let d = DenseMatrix::diagonal(s.singular_values())?;
    let p = symmetrize(u.matmul(&d)?.matmul(&u.transpose())?);
    let q = symmetrize(v.matmul(&d)?.matmul(&v.transpose())?);
    let w = u.matmul(&v.transpose())?;
    Ok(PolarFactors {
        p,
        q,
        w,
        semidefinite: s.rank_hint() < n,
    })
}

/// Averages `M` with its transpose to remove rounding asymmetry.
fn symmetrize(m: DenseMatrix) -> DenseMatrix {
    let t = m.transpose();
    m.add(&t).expect("square").scale(0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MirrorMode {
    /// Defense attributes set equal to offense attributes; reads `P`.
    OffenseMirrored,
    /// Offense attributes set equal to defense attributes; reads `Q`.
    DefenseMirrored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrawFixture {
    pub home: usize,
    pub away: usize,
    /// Both sides score this many goals.
    pub goals: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrawTable {
    pub mode: MirrorMode,
    pub scores: DenseMatrix,
    /// Every pairing `i < j`.
    pub fixtures: Vec<DrawFixture>,
}

impl DrawTable {
    /// Predicted `(home, away)` score; always a draw.
    pub fn score(&self, home: usize, away: usize) -> (f64, f64) {
        (self.scores[(home, away)], self.scores[(away, home)])
    }
}

pub fn hypothetical_scores(f: &PolarFactors, mode: MirrorMode) -> DrawTable {
    let scores = match mode {
        MirrorMode::OffenseMirrored => f.p.clone(),
        MirrorMode::DefenseMirrored => f.q.clone(),
    };
    let n = scores.rows();
    let fixtures = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(home, away)| DrawFixture {
            home,
            away,
            goals: scores[(home, away)],
        })
        .collect();
    DrawTable {
        mode,
        scores,
        fixtures,
    }
}
