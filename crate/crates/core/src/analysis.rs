//! Ratings and predictions derived from the SVD of a performance matrix.
//!
//! The dominant pair `(u₁, v₁)` holds offense scores (higher is better) and
//! defense scores (higher means more goals conceded). `A₁ = σ₁u₁v₁ᵀ` is the
//! score table those ratings alone would predict; the residual `A − A₁` and
//! its best rank-one approximation `A₂ = σ₂u₂v₂ᵀ` describe the correction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank_one, tol, truncated_sum, DenseMatrix, SvdResult};
use crate::tournament::PerformanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankEntry {
    pub team: usize,
    pub score: f64,
    /// Shares its score (within [`tol::SIGN`]) with another team.
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffenseDefenseScores {
    pub offense: Vec<f64>,
    pub defense: Vec<f64>,
    /// Best offense first (descending `u₁`).
    pub offense_ranking: Vec<RankEntry>,
    /// Best defense first (ascending `v₁`).
    pub defense_ranking: Vec<RankEntry>,
}

impl OffenseDefenseScores {
    pub fn offense_order(&self) -> Vec<usize> {
        self.offense_ranking.iter().map(|e| e.team).collect()
    }

    pub fn defense_order(&self) -> Vec<usize> {
        self.defense_ranking.iter().map(|e| e.team).collect()
    }
}

/// Orders teams by score. Scores within [`tol::SIGN`] of their neighbour in
/// sorted order form a tie block, listed by ascending team id and flagged.
pub fn rank_scores(scores: &[f64], descending: bool) -> Vec<RankEntry> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| {
        let c = scores[i].total_cmp(&scores[j]);
        if descending {
            c.reverse()
        } else {
            c
        }
    });

    let mut out = Vec::with_capacity(order.len());
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && (scores[order[end]] - scores[order[end - 1]]).abs() <= tol::SIGN
        {
            end += 1;
        }
        let mut block = order[start..end].to_vec();
        block.sort_unstable();
        let tied = block.len() > 1;
        out.extend(block.into_iter().map(|team| RankEntry {
            team,
            score: scores[team],
            tied,
        }));
        start = end;
    }
    out
}

pub fn offense_defense_scores(s: &SvdResult) -> OffenseDefenseScores {
    let offense = s.u(0).to_vec();
    let defense = s.v(0).to_vec();
    OffenseDefenseScores {
        offense_ranking: rank_scores(&offense, true),
        defense_ranking: rank_scores(&defense, false),
        offense,
        defense,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplainedFraction {
    pub value: f64,
    pub k: usize,
}

/// Share of `‖A‖²_F` captured by the leading `k` singular values.
pub fn explained_fraction(s: &SvdResult, k: usize) -> Result<ExplainedFraction> {
    if k == 0 || k > s.len() {
        return Err(Error::Parameter(format!("k = {k} outside 1..={}", s.len())));
    }
    let total = s.sum_of_squares();
    if total == 0.0 {
        return Err(Error::Degenerate(
            "all singular values are zero; explained fraction undefined".into(),
        ));
    }
    let head: f64 = s.singular_values()[..k].iter().map(|x| x * x).sum();
    Ok(ExplainedFraction {
        value: (head / total).min(1.0),
        k,
    })
}

/// The score table predicted by the leading `k` rating pairs.
pub fn predicted_matrix(s: &SvdResult, k: usize) -> Result<DenseMatrix> {
    truncated_sum(s, k)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SignGroups {
    /// Descending by value.
    pub positive: Vec<usize>,
    /// Descending by magnitude.
    pub negative: Vec<usize>,
    /// `|value| < τ_sign`.
    pub neutral: Vec<usize>,
}

pub fn sign_groups(values: &[f64]) -> SignGroups {
    let mut g = SignGroups::default();
    for (i, &x) in values.iter().enumerate() {
        if x.abs() < tol::SIGN {
            g.neutral.push(i);
        } else if x > 0.0 {
            g.positive.push(i);
        } else {
            g.negative.push(i);
        }
    }
    g.positive.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    g.negative.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalEntry {
    pub team: usize,
    pub value: f64,
}

/// Teams whose predicted correction lowers the goal action around them
/// ("boring") or raises it ("exciting").
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BoredomReport {
    /// Negative `A₂(i,i)`, largest magnitude first.
    pub boring: Vec<DiagonalEntry>,
    /// Positive `A₂(i,i)`, largest first.
    pub exciting: Vec<DiagonalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionAnalysis {
    /// `A − A₁`.
    pub residual: DenseMatrix,
    /// `A₂ = σ₂u₂v₂ᵀ`.
    pub predicted_correction: DenseMatrix,
    pub sigma: f64,
    pub offense_correction: Vec<f64>,
    pub defense_correction: Vec<f64>,
    pub offense_groups: SignGroups,
    pub defense_groups: SignGroups,
    pub boredom: BoredomReport,
}

pub fn correction_analysis(a: &PerformanceMatrix, s: &SvdResult) -> Result<CorrectionAnalysis> {
    let m = &a.matrix;
    if s.nrows() != m.rows() || s.ncols() != m.cols() {
        return Err(Error::Shape(format!(
            "decomposition of a {}x{} matrix does not fit a {}x{} performance matrix",
            s.nrows(),
            s.ncols(),
            m.rows(),
            m.cols()
        )));
    }
    if s.rank_hint() < 2 {
        return Err(Error::Degenerate(format!(
            "rank {} leaves no second-order structure",
            s.rank_hint()
        )));
    }
    let a1 = rank_one(s.sigma(0), s.u(0), s.v(0));
    let residual = m.sub(&a1)?;
    let predicted_correction = rank_one(s.sigma(1), s.u(1), s.v(1));
    let boredom = boredom_from_diagonal(&predicted_correction.diag());
    Ok(CorrectionAnalysis {
        residual,
        predicted_correction,
        sigma: s.sigma(1),
        offense_correction: s.u(1).to_vec(),
        defense_correction: s.v(1).to_vec(),
        offense_groups: sign_groups(s.u(1)),
        defense_groups: sign_groups(s.v(1)),
        boredom,
    })
}

pub fn boredom_ranking(c: &CorrectionAnalysis) -> BoredomReport {
    boredom_from_diagonal(&c.predicted_correction.diag())
}

fn boredom_from_diagonal(diag: &[f64]) -> BoredomReport {
    let mut report = BoredomReport::default();
    for (team, &value) in diag.iter().enumerate() {
        if value.abs() < tol::SIGN {
            continue;
        }
        let entry = DiagonalEntry { team, value };
        if value < 0.0 {
            report.boring.push(entry);
        } else {
            report.exciting.push(entry);
        }
    }
    report.boring.sort_by(|x, y| x.value.total_cmp(&y.value));
    report.exciting.sort_by(|x, y| y.value.total_cmp(&x.value));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Identical,
    IdenticalUpToTies,
    Different,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionComparison {
    pub verdict: Verdict,
    pub svd_order: Vec<usize>,
    /// Goal-count order; tied counts keep ascending team id.
    pub goal_order: Vec<usize>,
    pub goal_ties: bool,
    /// Positions where the SVD-ranked team's goal count differs from the
    /// count at that position in the goal ranking.
    pub differing_positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingComparison {
    pub offense: DimensionComparison,
    pub defense: DimensionComparison,
}

/// Compares the SVD rankings with the rankings induced by raw goals scored
/// (descending) and goals allowed (ascending).
pub fn compare_rankings(
    scores: &OffenseDefenseScores,
    goals_scored: &[u64],
    goals_allowed: &[u64],
) -> Result<RankingComparison> {
    let n = scores.offense.len();
    if goals_scored.len() != n || goals_allowed.len() != n {
        return Err(Error::Shape(format!(
            "{n} scored teams vs {} / {} goal counts",
            goals_scored.len(),
            goals_allowed.len()
        )));
    }
    Ok(RankingComparison {
        offense: compare_dimension(scores.offense_order(), goals_scored, true),
        defense: compare_dimension(scores.defense_order(), goals_allowed, false),
    })
}

fn compare_dimension(
    svd_order: Vec<usize>,
    goals: &[u64],
    descending: bool,
) -> DimensionComparison {
    let mut goal_order: Vec<usize> = (0..goals.len()).collect();
    goal_order.sort_by(|&i, &j| {
        let c = goals[i].cmp(&goals[j]);
        if descending {
            c.reverse()
        } else {
            c
        }
    });
    let goal_ties = goal_order.windows(2).any(|w| goals[w[0]] == goals[w[1]]);
    let differing_positions: Vec<usize> = svd_order
        .iter()
        .zip(&goal_order)
        .enumerate()
        .filter(|(_, (&s, &g))| goals[s] != goals[g])
        .map(|(pos, _)| pos)
        .collect();
    let verdict = match (differing_positions.is_empty(), goal_ties) {
        (false, _) => Verdict::Different,
        (true, false) => Verdict::Identical,
        (true, true) => Verdict::IdenticalUpToTies,
    };
    DimensionComparison {
        verdict,
        svd_order,
        goal_order,
        goal_ties,
        differing_positions,
    }
}
