//! Group standings: three points for a win, one for a draw, and the
//! tie-break cascade points → goal difference → goals scored → head-to-head
//! → fair play → coin toss.
//!
//! Head-to-head recomputes points, goal difference and goals scored over the
//! matches among the tied teams only; a subset that is still tied is
//! re-split the same way before falling through. Teams separated by fair
//! play into a smaller still-tied subset go back through head-to-head.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::tournament::Tournament;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiebreakLevel {
    Points,
    GoalDifference,
    GoalsFor,
    HeadToHead,
    FairPlay,
    CoinToss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandingsRow {
    pub team: usize,
    pub played: u32,
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
    pub points: i64,
    pub goals_for: i64,
    pub goals_against: i64,
    pub goal_difference: i64,
    /// Deepest level needed against an adjacent row.
    pub tiebreak_level_used: TiebreakLevel,
}

/// How two adjacent rows were separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairAudit {
    pub above: usize,
    pub below: usize,
    pub level: TiebreakLevel,
    /// The tied group the deciding comparison was made within.
    pub among: Vec<usize>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandingsTable {
    pub rows: Vec<StandingsRow>,
    pub advancing: Vec<usize>,
    pub audit: Vec<PairAudit>,
}

impl StandingsTable {
    pub fn order(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.team).collect()
    }

    pub fn row(&self, team: usize) -> Option<&StandingsRow> {
        self.rows.iter().find(|r| r.team == team)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Record {
    played: u32,
    wins: u32,
    draws: u32,
    losses: u32,
    goals_for: i64,
    goals_against: i64,
}

impl Record {
    fn points(&self) -> i64 {
        3 * i64::from(self.wins) + i64::from(self.draws)
    }

    fn goal_difference(&self) -> i64 {
        self.goals_for - self.goals_against
    }

    fn key(&self) -> (i64, i64, i64) {
        (self.points(), self.goal_difference(), self.goals_for)
    }
}

/// Records over the matches whose both teams are in `among` (all matches
/// when `among` is `None`).
fn records(t: &Tournament, among: Option<&[usize]>) -> Vec<Record> {
    let mut rec = vec![Record::default(); t.len()];
    let inside = |id: usize| among.is_none_or(|g| g.contains(&id));
    for m in t.matches() {
        if !(inside(m.home) && inside(m.away)) {
            continue;
        }
        for (team, scored, conceded) in [
            (m.home, m.home_goals, m.away_goals),
            (m.away, m.away_goals, m.home_goals),
        ] {
            let r = &mut rec[team];
            r.played += 1;
            r.goals_for += i64::from(scored);
            r.goals_against += i64::from(conceded);
            match scored.cmp(&conceded) {
                std::cmp::Ordering::Greater => r.wins += 1,
                std::cmp::Ordering::Equal => r.draws += 1,
                std::cmp::Ordering::Less => r.losses += 1,
            }
        }
    }
    rec
}

/// Splits `block` into runs of equal key, best (largest key) first. Team id
/// order is kept inside each run.
fn partition<K: Ord + Copy>(block: &[usize], key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    sorted.sort_by_key(|&id| Reverse(key(id)));
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for id in sorted {
        match parts.last_mut() {
            Some(run) if key(run[0]) == key(id) => run.push(id),
            _ => parts.push(vec![id]),
        }
    }
    parts
}

struct Resolved {
    order: Vec<usize>,
    /// One entry per adjacent pair in `order`.
    seps: Vec<PairAudit>,
}

impl Resolved {
    fn single(team: usize) -> Self {
        Resolved {
            order: vec![team],
            seps: Vec::new(),
        }
    }

    fn append(&mut self, next: Resolved, level: TiebreakLevel, among: &[usize]) {
        if let (Some(&above), Some(&below)) = (self.order.last(), next.order.first()) {
            self.seps.push(PairAudit {
                above,
                below,
                level,
                among: among.to_vec(),
                note: None,
            });
        }
        self.order.extend(next.order);
        self.seps.extend(next.seps);
    }
}

const FAIR_PLAY_MISSING: &str = "fair play data unavailable; decided by coin toss";

struct Cascade<'a> {
    t: &'a Tournament,
    overall: Vec<Record>,
    seed: u64,
    coin_round: u64,
}

impl Cascade<'_> {
    fn overall_level(&mut self, block: &[usize], level: TiebreakLevel) -> Resolved {
        let next = match level {
            TiebreakLevel::Points => TiebreakLevel::GoalDifference,
            TiebreakLevel::GoalDifference => TiebreakLevel::GoalsFor,
            _ => TiebreakLevel::HeadToHead,
        };
        let overall = &self.overall;
        let parts = partition(block, |id| match level {
            TiebreakLevel::Points => overall[id].points(),
            TiebreakLevel::GoalDifference => overall[id].goal_difference(),
            _ => overall[id].goals_for,
        });
        let mut out: Option<Resolved> = None;
        for part in parts {
            let sub = match (part.len(), next) {
                (1, _) => Resolved::single(part[0]),
                (_, TiebreakLevel::HeadToHead) => self.head_to_head(&part),
                _ => self.overall_level(&part, next),
            };
            match &mut out {
                None => out = Some(sub),
                Some(acc) => acc.append(sub, level, block),
            }
        }
        out.expect("non-empty block")
    }

    fn head_to_head(&mut self, block: &[usize]) -> Resolved {
        let mini = records(self.t, Some(block));
        let parts = partition(block, |id| mini[id].key());
        if parts.len() == 1 {
            return self.fair_play(block);
        }
        self.join(parts, TiebreakLevel::HeadToHead, block)
    }

    fn fair_play(&mut self, block: &[usize]) -> Resolved {
        let Some(fp) = self.t.fair_play() else {
            let mut r = self.coin_toss(block);
            for s in &mut r.seps {
                s.note = Some(FAIR_PLAY_MISSING.into());
            }
            return r;
        };
        let parts = partition(block, |id| Reverse(fp[id]));
        if parts.len() == 1 {
            return self.coin_toss(block);
        }
        self.join(parts, TiebreakLevel::FairPlay, block)
    }

    /// Concatenates ordered parts, sending each still-tied part back through
    /// head-to-head.
    fn join(&mut self, parts: Vec<Vec<usize>>, level: TiebreakLevel, block: &[usize]) -> Resolved {
        let mut out: Option<Resolved> = None;
        for part in parts {
            let sub = if part.len() == 1 {
                Resolved::single(part[0])
            } else {
                self.head_to_head(&part)
            };
            match &mut out {
                None => out = Some(sub),
                Some(acc) => acc.append(sub, level, block),
            }
        }
        out.expect("non-empty block")
    }

    fn coin_toss(&mut self, block: &[usize]) -> Resolved {
        let mut teams = block.to_vec();
        teams.sort_by(|&a, &b| self.t.name(a).cmp(self.t.name(b)));
        let names: Vec<&str> = teams.iter().map(|&id| self.t.name(id)).collect();
        let perm = coin_permutation(self.seed, self.coin_round, &names);
        self.coin_round += 1;

        let mut out = Resolved::single(teams[perm[0]]);
        for &k in &perm[1..] {
            out.append(Resolved::single(teams[k]), TiebreakLevel::CoinToss, block);
        }
        out
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Deterministic shuffle of `0..names.len()` driven by the seed, the
/// round counter and the (sorted) names of the teams being separated.
pub fn coin_permutation(seed: u64, round: u64, names: &[&str]) -> Vec<usize> {
    let mut state = seed;
    let mut round_state = round;
    state ^= splitmix64(&mut round_state);
    for name in names {
        state ^= fnv1a(name.as_bytes());
        splitmix64(&mut state);
    }
    let mut perm: Vec<usize> = (0..names.len()).collect();
    for i in (1..perm.len()).rev() {
        let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}

pub fn compute_standings(t: &Tournament) -> StandingsTable {
    let overall = records(t, None);
    let mut cascade = Cascade {
        t,
        overall: overall.clone(),
        seed: t.coin_seed().unwrap_or(0),
        coin_round: 0,
    };
    let all: Vec<usize> = (0..t.len()).collect();
    let resolved = cascade.overall_level(&all, TiebreakLevel::Points);

    let rows = resolved
        .order
        .iter()
        .enumerate()
        .map(|(pos, &team)| {
            let r = overall[team];
            let above = pos.checked_sub(1).map(|p| resolved.seps[p].level);
            let below = resolved.seps.get(pos).map(|s| s.level);
            StandingsRow {
                team,
                played: r.played,
                wins: r.wins,
                draws: r.draws,
                losses: r.losses,
                points: r.points(),
                goals_for: r.goals_for,
                goals_against: r.goals_against,
                goal_difference: r.goal_difference(),
                tiebreak_level_used: above.max(below).unwrap_or(TiebreakLevel::Points),
            }
        })
        .collect();
    StandingsTable {
        rows,
        advancing: resolved.order.iter().take(2).copied().collect(),
        audit: resolved.seps,
    }
}

impl PairAudit {
    /// Re-derives the recorded separation from the tournament: every level
    /// before `level` must compare equal and `level` itself must favour
    /// `above`. Coin tosses only check that everything before them tied.
    pub fn replays(&self, t: &Tournament) -> bool {
        let overall = records(t, None);
        let (a, b) = (overall[self.above], overall[self.below]);
        let mini = records(t, Some(&self.among));
        let fp = t.fair_play();
        match self.level {
            TiebreakLevel::Points => a.points() > b.points(),
            TiebreakLevel::GoalDifference => {
                a.points() == b.points() && a.goal_difference() > b.goal_difference()
            }
            TiebreakLevel::GoalsFor => {
                a.points() == b.points()
                    && a.goal_difference() == b.goal_difference()
                    && a.goals_for > b.goals_for
            }
            TiebreakLevel::HeadToHead => {
                a.key() == b.key() && mini[self.above].key() > mini[self.below].key()
            }
            TiebreakLevel::FairPlay => {
                let fp = fp.expect("fair play level requires data");
                a.key() == b.key()
                    && mini[self.above].key() == mini[self.below].key()
                    && fp[self.above] < fp[self.below]
            }
            TiebreakLevel::CoinToss => {
                a.key() == b.key()
                    && self
                        .among
                        .iter()
                        .all(|&id| mini[id].key() == mini[self.above].key())
                    && fp.is_none_or(|fp| fp[self.above] == fp[self.below])
            }
        }
    }
}
