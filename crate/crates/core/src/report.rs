//! The full analysis of one tournament, assembled once and rendered either
//! as fixed-width text (4 decimals) or as JSON (full precision).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    compare_rankings, correction_analysis, explained_fraction, offense_defense_scores,
    predicted_matrix, DimensionComparison, RankEntry, SignGroups, Verdict,
};
use crate::error::{Error, Result};
use crate::linalg::{svd, DenseMatrix};
use crate::polar::{hypothetical_scores, polar_factors, DrawTable, MirrorMode};
use crate::standings::{compute_standings, TiebreakLevel};
use crate::tournament::{
    build_performance_matrix, goals_allowed_vector, goals_scored_vector, Tournament,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl LabeledMatrix {
    fn new(labels: &[String], m: &DenseMatrix) -> Self {
        LabeledMatrix {
            labels: labels.to_vec(),
            rows: m.to_rows(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchEcho {
    pub home: String,
    pub away: String,
    pub home_goals: u32,
    pub away_goals: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentEcho {
    pub teams: Vec<String>,
    pub matches: Vec<MatchEcho>,
    pub fair_play: Option<Vec<i64>>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvdSection {
    pub sigma: Vec<f64>,
    /// Left singular vectors, one array per vector.
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub rank_hint: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedTeam {
    pub team: String,
    pub score: f64,
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEcho {
    pub verdict: Verdict,
    pub svd_order: Vec<String>,
    pub goal_order: Vec<String>,
    pub differing_positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoresSection {
    /// Set when every singular value is zero and the scores carry no
    /// information.
    pub degenerate: bool,
    pub offense: Vec<f64>,
    pub defense: Vec<f64>,
    pub offense_ranking: Vec<RankedTeam>,
    pub defense_ranking: Vec<RankedTeam>,
    pub goals_scored: Vec<u64>,
    pub goals_allowed: Vec<u64>,
    pub offense_vs_goals: ComparisonEcho,
    pub defense_vs_goals: ComparisonEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplainedSection {
    pub degenerate: bool,
    /// Entry `k − 1` is the fraction explained by the leading `k` pairs.
    pub fractions: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedSection {
    pub rank: usize,
    pub matrix: LabeledMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupsEcho {
    pub positive: Vec<String>,
    pub negative: Vec<String>,
    pub neutral: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalEcho {
    pub team: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionDetail {
    pub residual: LabeledMatrix,
    pub predicted_correction: LabeledMatrix,
    pub sigma: f64,
    pub offense_correction: Vec<f64>,
    pub defense_correction: Vec<f64>,
    pub offense_groups: GroupsEcho,
    pub defense_groups: GroupsEcho,
    pub boring: Vec<DiagonalEcho>,
    pub exciting: Vec<DiagonalEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionSection {
    pub degenerate: bool,
    pub detail: Option<CorrectionDetail>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawEcho {
    pub home: String,
    pub away: String,
    pub goals: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarSection {
    pub semidefinite: bool,
    pub p: LabeledMatrix,
    pub q: LabeledMatrix,
    pub w: LabeledMatrix,
    pub offense_mirrored: Vec<DrawEcho>,
    pub defense_mirrored: Vec<DrawEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowEcho {
    pub team: String,
    pub played: u32,
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
    pub points: i64,
    pub goals_for: i64,
    pub goals_against: i64,
    pub goal_difference: i64,
    pub tiebreak_level_used: TiebreakLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEcho {
    pub above: String,
    pub below: String,
    pub level: TiebreakLevel,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandingsSection {
    pub rows: Vec<RowEcho>,
    pub advancing: Vec<String>,
    pub audit: Vec<AuditEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tournament: TournamentEcho,
    pub matrix: LabeledMatrix,
    pub svd: SvdSection,
    pub scores: ScoresSection,
    pub explained: ExplainedSection,
    pub predicted: PredictedSection,
    pub correction: CorrectionSection,
    pub polar: PolarSection,
    pub standings: StandingsSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Matrix,
    Svd,
    Scores,
    Corrections,
    Polar,
    Standings,
    All,
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "matrix" => Section::Matrix,
            "svd" => Section::Svd,
            "scores" => Section::Scores,
            "corrections" => Section::Corrections,
            "polar" => Section::Polar,
            "standings" => Section::Standings,
            "all" => Section::All,
            other => return Err(Error::Parameter(format!("unknown section {other:?}"))),
        })
    }
}

impl AnalysisReport {
    /// Runs the whole pipeline. `rank` selects the order of the predicted
    /// matrix (1 for the offense/defense prediction).
    pub fn build(t: &Tournament, rank: usize) -> Result<Self> {
        let names = t.team_names();
        let label =
            |ids: &[usize]| -> Vec<String> { ids.iter().map(|&i| names[i].clone()).collect() };

        let a = build_performance_matrix(t);
        let s = svd(&a.matrix)?;
        let n = s.len();
        if rank == 0 || rank > n {
            return Err(Error::Parameter(format!("rank {rank} outside 1..={n}")));
        }

        let explained = match (1..=n)
            .map(|k| explained_fraction(&s, k).map(|f| f.value))
            .collect::<Result<Vec<f64>>>()
        {
            Ok(fractions) => ExplainedSection {
                degenerate: false,
                fractions,
            },
            Err(Error::Degenerate(_)) => ExplainedSection {
                degenerate: true,
                fractions: Vec::new(),
            },
            Err(e) => return Err(e),
        };

        let scored = goals_scored_vector(t);
        let allowed = goals_allowed_vector(t);
        let od = offense_defense_scores(&s);
        let cmp = compare_rankings(&od, &scored, &allowed)?;
        let ranked = |r: &[RankEntry]| -> Vec<RankedTeam> {
            r.iter()
                .map(|e| RankedTeam {
                    team: names[e.team].clone(),
                    score: e.score,
                    tied: e.tied,
                })
                .collect()
        };
        let echo_cmp = |c: &DimensionComparison| ComparisonEcho {
            verdict: c.verdict,
            svd_order: label(&c.svd_order),
            goal_order: label(&c.goal_order),
            differing_positions: c.differing_positions.clone(),
        };
        let scores = ScoresSection {
            degenerate: s.rank_hint() == 0,
            offense_ranking: ranked(&od.offense_ranking),
            defense_ranking: ranked(&od.defense_ranking),
            offense: od.offense,
            defense: od.defense,
            goals_scored: scored,
            goals_allowed: allowed,
            offense_vs_goals: echo_cmp(&cmp.offense),
            defense_vs_goals: echo_cmp(&cmp.defense),
        };

        let correction = match correction_analysis(&a, &s) {
            Ok(c) => {
                let groups = |g: &SignGroups| GroupsEcho {
                    positive: label(&g.positive),
                    negative: label(&g.negative),
                    neutral: label(&g.neutral),
                };
                let diag = |d: &[crate::analysis::DiagonalEntry]| -> Vec<DiagonalEcho> {
                    d.iter()
                        .map(|e| DiagonalEcho {
                            team: names[e.team].clone(),
                            value: e.value,
                        })
                        .collect()
                };
                CorrectionSection {
                    degenerate: false,
                    detail: Some(CorrectionDetail {
                        residual: LabeledMatrix::new(&names, &c.residual),
                        predicted_correction: LabeledMatrix::new(&names, &c.predicted_correction),
                        sigma: c.sigma,
                        offense_groups: groups(&c.offense_groups),
                        defense_groups: groups(&c.defense_groups),
                        boring: diag(&c.boredom.boring),
                        exciting: diag(&c.boredom.exciting),
                        offense_correction: c.offense_correction,
                        defense_correction: c.defense_correction,
                    }),
                }
            }
            Err(Error::Degenerate(_)) => CorrectionSection {
                degenerate: true,
                detail: None,
            },
            Err(e) => return Err(e),
        };

        let f = polar_factors(&s)?;
        let draws = |d: DrawTable| -> Vec<DrawEcho> {
            d.fixtures
                .iter()
                .map(|x| DrawEcho {
                    home: names[x.home].clone(),
                    away: names[x.away].clone(),
                    goals: x.goals,
                })
                .collect()
        };
        let polar = PolarSection {
            semidefinite: f.semidefinite,
            p: LabeledMatrix::new(&names, &f.p),
            q: LabeledMatrix::new(&names, &f.q),
            w: LabeledMatrix::new(&names, &f.w),
            offense_mirrored: draws(hypothetical_scores(&f, MirrorMode::OffenseMirrored)),
            defense_mirrored: draws(hypothetical_scores(&f, MirrorMode::DefenseMirrored)),
        };

        let table = compute_standings(t);
        let standings = StandingsSection {
            rows: table
                .rows
                .iter()
                .map(|r| RowEcho {
                    team: names[r.team].clone(),
                    played: r.played,
                    wins: r.wins,
                    draws: r.draws,
                    losses: r.losses,
                    points: r.points,
                    goals_for: r.goals_for,
                    goals_against: r.goals_against,
                    goal_difference: r.goal_difference,
                    tiebreak_level_used: r.tiebreak_level_used,
                })
                .collect(),
            advancing: label(&table.advancing),
            audit: table
                .audit
                .iter()
                .map(|p| AuditEcho {
                    above: names[p.above].clone(),
                    below: names[p.below].clone(),
                    level: p.level,
                    note: p.note.clone(),
                })
                .collect(),
        };

        Ok(AnalysisReport {
            tournament: TournamentEcho {
                teams: names.clone(),
                matches: t
                    .matches()
                    .iter()
                    .map(|m| MatchEcho {
                        home: names[m.home].clone(),
                        away: names[m.away].clone(),
                        home_goals: m.home_goals,
                        away_goals: m.away_goals,
                    })
                    .collect(),
                fair_play: t.fair_play().map(<[i64]>::to_vec),
                seed: t.coin_seed(),
            },
            matrix: LabeledMatrix::new(&names, &a.matrix),
            svd: SvdSection {
                sigma: s.singular_values().to_vec(),
                u: s.u_columns().to_vec(),
                v: s.v_columns().to_vec(),
                rank_hint: s.rank_hint(),
            },
            scores,
            explained,
            predicted: PredictedSection {
                rank,
                matrix: LabeledMatrix::new(&names, &predicted_matrix(&s, rank)?),
            },
            correction,
            polar,
            standings,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self, section: Section) -> String {
        let mut out = String::new();
        let want = |s: Section| section == Section::All || section == s;
        if want(Section::Matrix) {
            self.write_matrix_section(&mut out);
        }
        if want(Section::Svd) {
            self.write_svd_section(&mut out);
        }
        if want(Section::Scores) {
            self.write_scores_section(&mut out);
        }
        if want(Section::Corrections) {
            self.write_corrections_section(&mut out);
        }
        if want(Section::Polar) {
            self.write_polar_section(&mut out);
        }
        if want(Section::Standings) {
            self.write_standings_section(&mut out);
        }
        out
    }

    fn write_matrix_section(&self, out: &mut String) {
        heading(out, "Performance matrix A");
        write_matrix(out, &self.matrix);
    }

    fn write_svd_section(&self, out: &mut String) {
        heading(out, "Singular value decomposition");
        let _ = writeln!(out, "sigma: {}", join4(&self.svd.sigma));
        let _ = writeln!(out, "rank:  {}", self.svd.rank_hint);
        for (i, (u, v)) in self.svd.u.iter().zip(&self.svd.v).enumerate() {
            let _ = writeln!(out, "u{}: {}", i + 1, join4(u));
            let _ = writeln!(out, "v{}: {}", i + 1, join4(v));
        }
        let _ = writeln!(out);
        if self.explained.degenerate {
            let _ = writeln!(out, "explained: degenerate (all singular values are zero)");
        } else {
            for (k, f) in self.explained.fractions.iter().enumerate() {
                let _ = writeln!(out, "explained by first {}: {f:.4}", k + 1);
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "Predicted matrix (rank {})", self.predicted.rank);
        write_matrix(out, &self.predicted.matrix);
    }

    fn write_scores_section(&self, out: &mut String) {
        heading(out, "Offense and defense scores");
        if self.scores.degenerate {
            let _ = writeln!(out, "degenerate: no goals, scores carry no information");
        }
        let width = label_width(&self.tournament.teams);
        let _ = writeln!(
            out,
            "{:<width$} {:>8} {:>8} {:>6} {:>6}",
            "team", "offense", "defense", "GF", "GA"
        );
        for (i, team) in self.tournament.teams.iter().enumerate() {
            let _ = writeln!(
                out,
                "{team:<width$} {:>8.4} {:>8.4} {:>6} {:>6}",
                self.scores.offense[i],
                self.scores.defense[i],
                self.scores.goals_scored[i],
                self.scores.goals_allowed[i]
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "offense ranking: {}",
            ranking(&self.scores.offense_ranking)
        );
        let _ = writeln!(
            out,
            "defense ranking: {}",
            ranking(&self.scores.defense_ranking)
        );
        for (what, c) in [
            ("offense", &self.scores.offense_vs_goals),
            ("defense", &self.scores.defense_vs_goals),
        ] {
            let verdict = match c.verdict {
                Verdict::Identical => "identical".to_string(),
                Verdict::IdenticalUpToTies => "identical up to ties".to_string(),
                Verdict::Different => {
                    let pos: Vec<String> = c
                        .differing_positions
                        .iter()
                        .map(|p| (p + 1).to_string())
                        .collect();
                    format!("different at positions {}", pos.join(", "))
                }
            };
            let _ = writeln!(
                out,
                "{what} vs goal count: {verdict} (goals: {})",
                c.goal_order.join(", ")
            );
        }
    }

    fn write_corrections_section(&self, out: &mut String) {
        heading(out, "Correction analysis");
        let Some(c) = &self.correction.detail else {
            let _ = writeln!(out, "degenerate: rank below 2, no correction structure");
            return;
        };
        let _ = writeln!(out, "Residual A - A1");
        write_matrix(out, &c.residual);
        let _ = writeln!(out);
        let _ = writeln!(out, "Predicted correction A2 (sigma2 = {:.4})", c.sigma);
        write_matrix(out, &c.predicted_correction);
        let _ = writeln!(out);
        let _ = writeln!(out, "u2: {}", join4(&c.offense_correction));
        let _ = writeln!(out, "v2: {}", join4(&c.defense_correction));
        for (what, g) in [
            ("offense", &c.offense_groups),
            ("defense", &c.defense_groups),
        ] {
            let _ = writeln!(
                out,
                "{what} correction groups: positive {{{}}}, negative {{{}}}{}",
                g.positive.join(", "),
                g.negative.join(", "),
                if g.neutral.is_empty() {
                    String::new()
                } else {
                    format!(", neutral {{{}}}", g.neutral.join(", "))
                }
            );
        }
        let list = |d: &[DiagonalEcho]| {
            d.iter()
                .map(|e| format!("{} ({:.4})", e.team, e.value))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(out, "boring:   {}", list(&c.boring));
        let _ = writeln!(out, "exciting: {}", list(&c.exciting));
    }

    fn write_polar_section(&self, out: &mut String) {
        heading(out, "Polar decomposition");
        if self.polar.semidefinite {
            let _ = writeln!(
                out,
                "note: A is rank deficient; P and Q are only semidefinite"
            );
        }
        let _ = writeln!(out, "P = U D U^T (defense mirrors offense)");
        write_matrix(out, &self.polar.p);
        let _ = writeln!(out);
        let _ = writeln!(out, "Q = V D V^T (offense mirrors defense)");
        write_matrix(out, &self.polar.q);
        let _ = writeln!(out);
        let width = label_width(&self.tournament.teams);
        let _ = writeln!(
            out,
            "{:<w$}   {:>15} {:>15}",
            "draw",
            "offense-mirror",
            "defense-mirror",
            w = 2 * width + 3
        );
        for (p, q) in self
            .polar
            .offense_mirrored
            .iter()
            .zip(&self.polar.defense_mirrored)
        {
            let fixture = format!("{} - {}", p.home, p.away);
            let _ = writeln!(
                out,
                "{fixture:<w$}   {:>15} {:>15}",
                format!("{0:.4}:{0:.4}", p.goals),
                format!("{0:.4}:{0:.4}", q.goals),
                w = 2 * width + 3
            );
        }
    }

    fn write_standings_section(&self, out: &mut String) {
        heading(out, "Standings");
        let width = label_width(&self.tournament.teams);
        let _ = writeln!(
            out,
            "{:<width$} {:>2} {:>2} {:>2} {:>2} {:>3} {:>3} {:>4} {:>4}  decided by",
            "team", "P", "W", "D", "L", "GF", "GA", "GD", "Pts"
        );
        for r in &self.standings.rows {
            let _ = writeln!(
                out,
                "{:<width$} {:>2} {:>2} {:>2} {:>2} {:>3} {:>3} {:>4} {:>4}  {}",
                r.team,
                r.played,
                r.wins,
                r.draws,
                r.losses,
                r.goals_for,
                r.goals_against,
                signed(r.goal_difference),
                r.points,
                level_name(r.tiebreak_level_used)
            );
        }
        let _ = writeln!(out);
        for a in &self.standings.audit {
            let _ = write!(
                out,
                "{} above {}: {}",
                a.above,
                a.below,
                level_name(a.level)
            );
            if let Some(note) = &a.note {
                let _ = write!(out, " ({note})");
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out, "advancing: {}", self.standings.advancing.join(", "));
    }
}

fn heading(out: &mut String, title: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "== {title} ==");
}

fn label_width(names: &[String]) -> usize {
    names
        .iter()
        .map(|n| n.chars().count())
        .max()
        .unwrap_or(4)
        .max(4)
}

fn write_matrix(out: &mut String, m: &LabeledMatrix) {
    let width = label_width(&m.labels);
    let col = m
        .labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        .clamp(8, 14);
    let _ = write!(out, "{:width$}", "");
    for l in &m.labels {
        let short: String = l.chars().take(col).collect();
        let _ = write!(out, " {short:>col$}");
    }
    let _ = writeln!(out);
    for (label, row) in m.labels.iter().zip(&m.rows) {
        let _ = write!(out, "{label:<width$}");
        for x in row {
            let _ = write!(out, " {:>col$}", fmt4(*x));
        }
        let _ = writeln!(out);
    }
}

/// Four decimals without a negative sign on values that round to zero.
fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn signed(x: i64) -> String {
    if x > 0 {
        format!("+{x}")
    } else {
        x.to_string()
    }
}

fn join4(v: &[f64]) -> String {
    v.iter().map(|&x| fmt4(x)).collect::<Vec<_>>().join(", ")
}

fn ranking(r: &[RankedTeam]) -> String {
    r.iter()
        .map(|e| {
            if e.tied {
                format!("{} (tied)", e.team)
            } else {
                e.team.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn level_name(l: TiebreakLevel) -> &'static str {
    match l {
        TiebreakLevel::Points => "points",
        TiebreakLevel::GoalDifference => "goal difference",
        TiebreakLevel::GoalsFor => "goals scored",
        TiebreakLevel::HeadToHead => "head-to-head",
        TiebreakLevel::FairPlay => "fair play",
        TiebreakLevel::CoinToss => "coin toss",
    }
}
