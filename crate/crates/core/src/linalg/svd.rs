//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! The working copy of `A` is rotated column pair by column pair until every
//! pair is orthogonal to within [`tol::JACOBI`] relative to the column norms.
//! Columns whose norm falls to `m·ε·‖A‖_F` or below are rounding noise from
//! rank deficiency; their pairs are not rotated further and their left
//! vectors are rebuilt by Gram-Schmidt.
//! The accumulated rotations form `V`, the final column norms are the
//! singular values and the normalized columns are `U`.

use serde::Serialize;

use super::matrix::{dot, norm2, DenseMatrix};
use super::tol;
use crate::error::{Error, Result};

/// Thin SVD `A = Σ σᵢ uᵢ vᵢᵀ` with `min(m, n)` triplets ordered by
/// non-increasing `σᵢ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvdResult {
    u: Vec<Vec<f64>>,
    sigma: Vec<f64>,
    v: Vec<Vec<f64>>,
    rank_hint: usize,
}

impl SvdResult {
    /// Assembles a decomposition from its parts. Only shapes and ordering are
    /// checked; orthonormality is the caller's responsibility.
    pub fn from_parts(u: Vec<Vec<f64>>, sigma: Vec<f64>, v: Vec<Vec<f64>>) -> Result<Self> {
        if sigma.is_empty() || u.len() != sigma.len() || v.len() != sigma.len() {
            return Err(Error::Shape(format!(
                "{} singular values with {} left and {} right vectors",
                sigma.len(),
                u.len(),
                v.len()
            )));
        }
        let m = u[0].len();
        let n = v[0].len();
        if m == 0 || n == 0 || u.iter().any(|c| c.len() != m) || v.iter().any(|c| c.len() != n) {
            return Err(Error::Shape("singular vectors of unequal length".into()));
        }
        if sigma.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(Error::Parameter(
                "singular values must be finite and nonnegative".into(),
            ));
        }
        if sigma.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parameter(
                "singular values must be non-increasing".into(),
            ));
        }
        let rank_hint = rank_hint(&sigma, m.max(n));
        Ok(SvdResult {
            u,
            sigma,
            v,
            rank_hint,
        })
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn sigma(&self, i: usize) -> f64 {
        self.sigma[i]
    }

    pub fn u(&self, i: usize) -> &[f64] {
        &self.u[i]
    }

    pub fn v(&self, i: usize) -> &[f64] {
        &self.v[i]
    }

    pub fn u_columns(&self) -> &[Vec<f64>] {
        &self.u
    }

    pub fn v_columns(&self) -> &[Vec<f64>] {
        &self.v
    }

    /// Number of triplets, `min(m, n)` for a computed decomposition.
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Count of singular values above `max(m, n)·ε·σ₁`.
    pub fn rank_hint(&self) -> usize {
        self.rank_hint
    }

    /// Row count of the decomposed matrix.
    pub fn nrows(&self) -> usize {
        self.u[0].len()
    }

    pub fn ncols(&self) -> usize {
        self.v[0].len()
    }

    pub fn u_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_columns(&self.u).expect("validated shape")
    }

    pub fn v_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_columns(&self.v).expect("validated shape")
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum()
    }
}

fn rank_hint(sigma: &[f64], dim: usize) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return 0;
    }
    let cutoff = dim as f64 * f64::EPSILON * top;
    sigma.iter().filter(|&&s| s > cutoff).count()
}

pub fn svd(a: &DenseMatrix) -> Result<SvdResult> {
    svd_with_max_sweeps(a, tol::MAX_SWEEPS)
}

/// [`svd`] with an explicit sweep budget.
pub fn svd_with_max_sweeps(a: &DenseMatrix, max_sweeps: usize) -> Result<SvdResult> {
    let (m, n) = (a.rows(), a.cols());
    let transposed = m < n;
    let work = if transposed { a.transpose() } else { a.clone() };

    let (left, sigma, right) = jacobi(&work, max_sweeps)?;
    let (u, v) = if transposed {
        (right, left)
    } else {
        (left, right)
    };
    let rank_hint = rank_hint(&sigma, m.max(n));
    Ok(sign_normalize(SvdResult {
        u,
        sigma,
        v,
        rank_hint,
    }))
}

type Columns = Vec<Vec<f64>>;

/// One-sided Jacobi on a tall (`rows ≥ cols`) matrix. Returns the left
/// vectors, singular values and right vectors, sorted by descending value.
fn jacobi(a: &DenseMatrix, max_sweeps: usize) -> Result<(Columns, Vec<f64>, Columns)> {
    let (m, n) = (a.rows(), a.cols());
    debug_assert!(m >= n);
    let mut cols: Columns = (0..n).map(|j| a.column(j)).collect();
    let mut v: Columns = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    // Columns at or below this norm are rounding noise: their pairs count as
    // converged and their left vectors are rebuilt by Gram-Schmidt.
    let floor = m as f64 * f64::EPSILON * a.frobenius_norm();

    let mut sweep = 0;
    loop {
        let mut pending = false;
        let mut worst = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 {
                    continue;
                }
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                if alpha.sqrt() <= floor || beta.sqrt() <= floor {
                    continue;
                }
                let off = gamma.abs() / (alpha.sqrt() * beta.sqrt());
                if off <= tol::JACOBI {
                    continue;
                }
                worst = worst.max(off);
                pending = true;
                if sweep == max_sweeps {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.abs().hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !pending {
            break;
        }
        if sweep == max_sweeps {
            return Err(Error::IterationLimit {
                sweeps: max_sweeps,
                residual: worst,
            });
        }
        sweep += 1;
    }

    let norms: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: tied values keep their column order
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let right: Columns = order.iter().map(|&j| v[j].clone()).collect();
    let direction = |j: usize| -> Vec<f64> { cols[j].iter().map(|x| x / norms[j]).collect() };
    let mut left: Vec<Option<Vec<f64>>> = order
        .iter()
        .map(|&j| (norms[j] > floor).then(|| direction(j)))
        .collect();
    let hints: Vec<Option<Vec<f64>>> = order
        .iter()
        .map(|&j| (norms[j] <= floor && norms[j] > 0.0).then(|| direction(j)))
        .collect();
    complete_basis(&mut left, &hints, m);
    let left = left
        .into_iter()
        .map(|c| c.expect("basis completed"))
        .collect();
    Ok((left, sigma, right))
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Fills the missing columns (negligible singular values) with unit vectors
/// orthogonal to every other column. Each slot uses its hint direction if
/// most of it survives projection, otherwise the standard basis vector with
/// the largest remainder (at least `1/√dim` of it survives).
fn complete_basis(cols: &mut [Option<Vec<f64>>], hints: &[Option<Vec<f64>>], dim: usize) {
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        if let Some(h) = &hints[slot] {
            let (e, len) = project_out(h.clone(), cols);
            if len > 0.5 {
                cols[slot] = Some(e.into_iter().map(|x| x / len).collect());
                continue;
            }
        }
        let (e, len) = (0..dim)
            .map(|k| {
                let mut e = vec![0.0; dim];
                e[k] = 1.0;
                project_out(e, cols)
            })
            .fold((Vec::new(), f64::NEG_INFINITY), |best, c| {
                if c.1 > best.1 {
                    c
                } else {
                    best
                }
            });
        cols[slot] = Some(e.into_iter().map(|x| x / len).collect());
    }
}

/// Two Gram-Schmidt passes of `e` against the filled columns; returns the
/// remainder and its length.
fn project_out(mut e: Vec<f64>, cols: &[Option<Vec<f64>>]) -> (Vec<f64>, f64) {
    for _ in 0..2 {
        for other in cols.iter().flatten() {
            let proj = dot(&e, other);
            for (x, o) in e.iter_mut().zip(other) {
                *x -= proj * o;
            }
        }
    }
    let len = norm2(&e);
    (e, len)
}

/// Flips each pair `(uᵢ, vᵢ)` so that the largest-magnitude entry of `uᵢ`
/// is positive (first index wins ties). The product `uᵢvᵢᵀ` is unchanged.
pub fn sign_normalize(mut s: SvdResult) -> SvdResult {
    for (u, v) in s.u.iter_mut().zip(s.v.iter_mut()) {
        let mut lead = 0;
        for (i, x) in u.iter().enumerate() {
            if x.abs() > u[lead].abs() {
                lead = i;
            }
        }
        if u[lead] < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    s
}

/// The outer product `σ·u·vᵀ`.
///
/// # Panics
/// If `u` or `v` is empty.
pub fn rank_one(sigma: f64, u: &[f64], v: &[f64]) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(u.len(), v.len());
    for (i, &ui) in u.iter().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            out.set(i, j, sigma * ui * vj);
        }
    }
    out
}

/// Sum of the leading `k` rank-one terms.
pub fn truncated_sum(s: &SvdResult, k: usize) -> Result<DenseMatrix> {
    if k == 0 || k > s.len() {
        return Err(Error::Parameter(format!(
            "rank {k} outside 1..={}",
            s.len()
        )));
    }
    let mut out = DenseMatrix::zeros(s.nrows(), s.ncols());
    for i in 0..k {
        out = out.add(&rank_one(s.sigma[i], &s.u[i], &s.v[i]))?;
    }
    Ok(out)
}
