//! Tournament data model, the line-oriented text format, goal statistics and
//! the offense/defense performance matrix.
//!
//! Format:
//!
//! ```text
//! # comment
//! teams: Argentina, Poland, Mexico, "Saudi Arabia"
//! fairplay: -3, -5, -7, -14     (optional, lower is better)
//! seed: 7                       (optional coin-toss seed)
//! Argentina 2:0 Poland
//! "Saudi Arabia" 2:1 Argentina
//! ```
//!
//! Exactly one match line per unordered pair of teams is required.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Team {
    pub id: usize,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub home: usize,
    pub away: usize,
    pub home_goals: u32,
    pub away_goals: u32,
}

impl MatchResult {
    pub fn involves(&self, team: usize) -> bool {
        self.home == team || self.away == team
    }

    /// `(scored, conceded)` from `team`'s side, if it played in this match.
    pub fn goals_for(&self, team: usize) -> Option<(u32, u32)> {
        if team == self.home {
            Some((self.home_goals, self.away_goals))
        } else if team == self.away {
            Some((self.away_goals, self.home_goals))
        } else {
            None
        }
    }
}

/// A complete single round robin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tournament {
    teams: Vec<Team>,
    matches: Vec<MatchResult>,
    fair_play: Option<Vec<i64>>,
    coin_seed: Option<u64>,
}

impl Tournament {
    pub fn new(
        names: Vec<String>,
        matches: Vec<MatchResult>,
        fair_play: Option<Vec<i64>>,
        coin_seed: Option<u64>,
    ) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::Tournament(format!("need at least 2 teams, got {n}")));
        }
        let mut seen = HashMap::new();
        for name in &names {
            validate_name(name).map_err(Error::Tournament)?;
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::Tournament(format!("duplicate team name {name:?}")));
            }
        }
        if let Some(fp) = &fair_play {
            if fp.len() != n {
                return Err(Error::Tournament(format!(
                    "{} fair play values for {n} teams",
                    fp.len()
                )));
            }
        }
        let teams: Vec<Team> = names
            .into_iter()
            .enumerate()
            .map(|(id, name)| Team { id, name })
            .collect();

        let mut played = vec![false; n * n];
        for m in &matches {
            if m.home >= n || m.away >= n {
                return Err(Error::Tournament(format!(
                    "match references unknown team id {}",
                    m.home.max(m.away)
                )));
            }
            if m.home == m.away {
                return Err(Error::Tournament(format!(
                    "{} cannot play itself",
                    teams[m.home].name
                )));
            }
            let key = pair_key(n, m.home, m.away);
            if played[key] {
                return Err(Error::Tournament(format!(
                    "duplicate pairing {} vs {}",
                    teams[m.home].name, teams[m.away].name
                )));
            }
            played[key] = true;
        }
        if let Some((i, j)) = first_missing_pair(n, &played) {
            return Err(Error::Tournament(format!(
                "incomplete round robin: missing {} vs {}",
                teams[i].name, teams[j].name
            )));
        }
        Ok(Tournament {
            teams,
            matches,
            fair_play,
            coin_seed,
        })
    }

    pub fn teams(&self) -> &[Team] {
        &self.teams
    }

    pub fn team_names(&self) -> Vec<String> {
        self.teams.iter().map(|t| t.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn matches(&self) -> &[MatchResult] {
        &self.matches
    }

    pub fn fair_play(&self) -> Option<&[i64]> {
        self.fair_play.as_deref()
    }

    pub fn coin_seed(&self) -> Option<u64> {
        self.coin_seed
    }

    pub fn team_index(&self, name: &str) -> Option<usize> {
        self.teams.iter().position(|t| t.name == name)
    }

    pub fn name(&self, id: usize) -> &str {
        &self.teams[id].name
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.coin_seed = Some(seed);
        self
    }

    pub fn with_fair_play(mut self, values: Vec<i64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::Tournament(format!(
                "{} fair play values for {} teams",
                values.len(),
                self.len()
            )));
        }
        self.fair_play = Some(values);
        Ok(self)
    }

    /// Goals `scorer` put past `opponent` in their match.
    pub fn goals_between(&self, scorer: usize, opponent: usize) -> Option<u32> {
        self.matches.iter().find_map(|m| {
            if m.home == scorer && m.away == opponent {
                Some(m.home_goals)
            } else if m.away == scorer && m.home == opponent {
                Some(m.away_goals)
            } else {
                None
            }
        })
    }

    pub fn total_goals(&self) -> u64 {
        self.matches
            .iter()
            .map(|m| u64::from(m.home_goals) + u64::from(m.away_goals))
            .sum()
    }

    /// Renders the tournament in the text format accepted by
    /// [`parse_tournament`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.teams.iter().map(|t| quote(&t.name)).collect();
        writeln!(f, "teams: {}", names.join(", "))?;
        if let Some(fp) = &self.fair_play {
            let vals: Vec<String> = fp.iter().map(i64::to_string).collect();
            writeln!(f, "fairplay: {}", vals.join(", "))?;
        }
        if let Some(seed) = self.coin_seed {
            writeln!(f, "seed: {seed}")?;
        }
        for m in &self.matches {
            writeln!(
                f,
                "{} {}:{} {}",
                quote(&self.teams[m.home].name),
                m.home_goals,
                m.away_goals,
                quote(&self.teams[m.away].name)
            )?;
        }
        Ok(())
    }
}

fn pair_key(n: usize, a: usize, b: usize) -> usize {
    a.min(b) * n + a.max(b)
}

fn first_missing_pair(n: usize, played: &[bool]) -> Option<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .find(|&(i, j)| !played[pair_key(n, i, j)])
}

fn validate_name(name: &str) -> std::result::Result<(), String> {
    if name.trim().is_empty() {
        return Err("team names must be non-empty".into());
    }
    if name.trim() != name {
        return Err(format!("team name {name:?} has surrounding whitespace"));
    }
    if name.contains('"') || name.contains('\n') {
        return Err(format!("team name {name:?} contains a quote or newline"));
    }
    Ok(())
}

fn quote(name: &str) -> String {
    let plain = !name.starts_with('#')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c == ':');
    if plain {
        name.to_string()
    } else {
        format!("\"{name}\"")
    }
}

/// Splits off one team name, quoted or bare. Bare names end at whitespace
/// or at `stop`.
fn take_name(s: &str, stop: Option<char>) -> std::result::Result<(&str, &str), String> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('"') {
        let end = rest.find('"').ok_or("unterminated quoted name")?;
        Ok((&rest[..end], &rest[end + 1..]))
    } else {
        let end = s
            .find(|c: char| c.is_whitespace() || Some(c) == stop)
            .unwrap_or(s.len());
        if end == 0 {
            return Err("expected a team name".into());
        }
        Ok((&s[..end], &s[end..]))
    }
}

fn parse_team_list(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut names = Vec::new();
    let mut rest = s;
    loop {
        let (name, tail) = take_name(rest, Some(','))?;
        names.push(name.to_string());
        let tail = tail.trim_start();
        if tail.is_empty() {
            return Ok(names);
        }
        rest = tail
            .strip_prefix(',')
            .ok_or_else(|| format!("expected ',' before {tail:?}"))?;
    }
}

fn parse_score(token: &str) -> std::result::Result<(u32, u32), String> {
    let (h, a) = token
        .split_once(':')
        .ok_or_else(|| format!("malformed score {token:?}, expected <home>:<away>"))?;
    let goal = |g: &str| {
        g.parse::<u32>()
            .map_err(|_| format!("malformed score {token:?}"))
    };
    Ok((goal(h)?, goal(a)?))
}

fn directive<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
}

/// Parses and validates a tournament document. Errors carry the 1-based
/// line number they were found on; completeness failures point at the
/// last line of the document.
pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut names: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut fair_play: Option<Vec<i64>> = None;
    let mut seed: Option<u64> = None;
    let mut matches = Vec::new();
    let mut pair_line: HashMap<(usize, usize), usize> = HashMap::new();
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(team_names) = &names else {
            let list = directive(line, "teams")
                .ok_or_else(|| Error::parse(lineno, "first line must be `teams: ...`"))?;
            let list = parse_team_list(list).map_err(|m| Error::parse(lineno, m))?;
            if list.len() < 2 {
                return Err(Error::parse(lineno, "need at least 2 teams"));
            }
            for (id, name) in list.iter().enumerate() {
                validate_name(name).map_err(|m| Error::parse(lineno, m))?;
                if index.insert(name.clone(), id).is_some() {
                    return Err(Error::parse(
                        lineno,
                        format!("duplicate team name {name:?}"),
                    ));
                }
            }
            names = Some(list);
            continue;
        };
        if directive(line, "teams").is_some() {
            return Err(Error::parse(lineno, "teams declared twice"));
        }
        if let Some(values) = directive(line, "fairplay") {
            if fair_play.is_some() {
                return Err(Error::parse(lineno, "fairplay declared twice"));
            }
            let vals = values
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| {
                    Error::parse(lineno, format!("malformed fairplay values {values:?}"))
                })?;
            if vals.len() != team_names.len() {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "{} fairplay values for {} teams",
                        vals.len(),
                        team_names.len()
                    ),
                ));
            }
            fair_play = Some(vals);
            continue;
        }
        if let Some(value) = directive(line, "seed") {
            if seed.is_some() {
                return Err(Error::parse(lineno, "seed declared twice"));
            }
            seed = Some(
                value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("malformed seed {value:?}")))?,
            );
            continue;
        }

        let (home, rest) = take_name(line, None).map_err(|m| Error::parse(lineno, m))?;
        let rest = rest.trim_start();
        let score_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let (home_goals, away_goals) =
            parse_score(&rest[..score_end]).map_err(|m| Error::parse(lineno, m))?;
        let (away, tail) =
            take_name(&rest[score_end..], None).map_err(|m| Error::parse(lineno, m))?;
        if !tail.trim().is_empty() {
            return Err(Error::parse(
                lineno,
                format!("unexpected trailing text {:?}", tail.trim()),
            ));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(lineno, format!("unknown team {name:?}")))
        };
        let (h, a) = (lookup(home)?, lookup(away)?);
        if h == a {
            return Err(Error::parse(lineno, format!("{home} cannot play itself")));
        }
        if let Some(prev) = pair_line.insert((h.min(a), h.max(a)), lineno) {
            return Err(Error::parse(
                lineno,
                format!("duplicate pairing {home} vs {away} (first seen on line {prev})"),
            ));
        }
        matches.push(MatchResult {
            home: h,
            away: a,
            home_goals,
            away_goals,
        });
    }

    let names = names.ok_or_else(|| Error::parse(last_line.max(1), "missing `teams:` line"))?;
    Tournament::new(names, matches, fair_play, seed).map_err(|e| match e {
        Error::Tournament(message) => Error::Parse {
            line: last_line,
            message,
        },
        other => other,
    })
}

/// The `n×n` offense/defense matrix: `(i, j)` holds the goals team `i`
/// scored against team `j`; `(i, i)` is the mean of the `2(n−1)`
/// off-diagonal entries of row `i` and column `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerformanceMatrix {
    pub matrix: DenseMatrix,
    pub teams: Vec<String>,
}

impl PerformanceMatrix {
    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }
}

pub fn build_performance_matrix(t: &Tournament) -> PerformanceMatrix {
    let n = t.len();
    let mut a = DenseMatrix::zeros(n, n);
    for m in t.matches() {
        a.set(m.home, m.away, f64::from(m.home_goals));
        a.set(m.away, m.home, f64::from(m.away_goals));
    }
    let scored = goals_scored_vector(t);
    let allowed = goals_allowed_vector(t);
    let divisor = (2 * (n - 1)) as f64;
    for i in 0..n {
        a.set(i, i, (scored[i] + allowed[i]) as f64 / divisor);
    }
    PerformanceMatrix {
        matrix: a,
        teams: t.team_names(),
    }
}

pub fn goals_scored_vector(t: &Tournament) -> Vec<u64> {
    let mut v = vec![0u64; t.len()];
    for m in t.matches() {
        v[m.home] += u64::from(m.home_goals);
        v[m.away] += u64::from(m.away_goals);
    }
    v
}

pub fn goals_allowed_vector(t: &Tournament) -> Vec<u64> {
    let mut v = vec![0u64; t.len()];
    for m in t.matches() {
        v[m.home] += u64::from(m.away_goals);
        v[m.away] += u64::from(m.home_goals);
    }
    v
}

/// Scales a count vector to unit Euclidean length.
pub fn normalized(v: &[u64]) -> Result<Vec<f64>> {
    let len = v.iter().map(|&x| (x as f64).powi(2)).sum::<f64>().sqrt();
    if len == 0.0 {
        return Err(Error::Degenerate("cannot normalize a zero vector".into()));
    }
    Ok(v.iter().map(|&x| x as f64 / len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const GROUP_C: &str = "\
# Group C
teams: Argentina, Poland, Mexico, \"Saudi Arabia\"
Argentina 2:0 Poland
Argentina 2:0 Mexico
\"Saudi Arabia\" 2:1 Argentina
Poland 0:0 Mexico
Poland 2:0 \"Saudi Arabia\"
Mexico 2:1 \"Saudi Arabia\"
";

    fn group_c() -> Tournament {
        parse_tournament(GROUP_C).unwrap()
    }

    #[test]
    fn parses_group_c() {
        let t = group_c();
        assert_eq!(t.len(), 4);
        assert_eq!(t.matches().len(), 6);
        assert_eq!(t.name(3), "Saudi Arabia");
        assert_eq!(t.goals_between(0, 1), Some(2));
        assert_eq!(t.goals_between(1, 0), Some(0));
        assert_eq!(t.goals_between(3, 0), Some(2));
        assert_eq!(t.fair_play(), None);
        assert_eq!(t.coin_seed(), None);
    }

    #[test]
    fn minimal_two_team_file() {
        let t = parse_tournament("teams: A, B\nA 1:1 B\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.matches()[0].home_goals, 1);
    }

    #[test]
    fn missing_pairing_is_reported() {
        let text = GROUP_C.replace("Mexico 2:1 \"Saudi Arabia\"\n", "");
        let err = parse_tournament(&text).unwrap_err();
        match err {
            Error::Parse { message, .. } => {
                assert!(message.contains("incomplete round robin"), "{message}");
                assert!(message.contains("Mexico") && message.contains("Saudi Arabia"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("teams: A, B\nA 1:1 C\n", 2, "unknown team"),
            ("teams: A, B\nA 1:1 B\nB 0:2 A\n", 3, "duplicate pairing"),
            ("teams: A, B\n\nA 1-1 B\n", 3, "malformed score"),
            ("teams: A, B\nA x:1 B\n", 2, "malformed score"),
            ("teams: A, B\nA 1:1 A\n", 2, "cannot play itself"),
            ("# c\nA 1:1 B\n", 2, "teams:"),
            ("teams: A, A\n", 1, "duplicate team"),
            ("teams: A, B\nfairplay: 1\nA 1:1 B\n", 2, "fairplay values"),
            ("teams: A, B\nseed: -1\nA 1:1 B\n", 2, "malformed seed"),
            ("teams: A, \"B\nA 1:1 B\n", 1, "unterminated"),
        ];
        for (text, line, needle) in cases {
            match parse_tournament(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}: {message}");
                    assert!(message.contains(needle), "{text:?}: {message}");
                }
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn optional_directives() {
        let t = parse_tournament(
            "teams: A, B, C\nfairplay: 3, -1, 0\nseed: 42\nA 1:0 B\nB 2:2 C\nC 0:1 A\n",
        )
        .unwrap();
        assert_eq!(t.fair_play(), Some(&[3, -1, 0][..]));
        assert_eq!(t.coin_seed(), Some(42));
    }

    #[test]
    fn text_round_trip() {
        let t = group_c()
            .with_seed(9)
            .with_fair_play(vec![1, 2, 3, 4])
            .unwrap();
        assert_eq!(parse_tournament(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn group_c_performance_matrix() {
        let a = build_performance_matrix(&group_c()).matrix;
        assert!((a[(0, 0)] - 1.1667).abs() < 1e-4);
        assert_eq!(a[(1, 3)], 2.0);
        assert_eq!(a[(3, 0)], 2.0);
        assert_eq!(a[(0, 0)], 7.0 / 6.0);
    }

    #[test]
    fn goalless_tournament_gives_zero_matrix() {
        let t = parse_tournament("teams: A, B, C\nA 0:0 B\nA 0:0 C\nB 0:0 C\n").unwrap();
        assert_eq!(
            build_performance_matrix(&t).matrix,
            DenseMatrix::zeros(3, 3)
        );
        assert_eq!(goals_scored_vector(&t), vec![0, 0, 0]);
        assert!(matches!(
            normalized(&goals_scored_vector(&t)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn goal_vectors() {
        let t = group_c();
        assert_eq!(goals_scored_vector(&t), vec![5, 2, 2, 3]);
        assert_eq!(goals_allowed_vector(&t), vec![2, 2, 3, 5]);
    }

    #[test]
    fn normalized_vectors() {
        let s = normalized(&[5, 2, 2, 3]).unwrap();
        for (x, y) in s.iter().zip([0.7715, 0.3086, 0.3086, 0.4629]) {
            assert!((x - y).abs() < 1e-4);
        }
        let a = normalized(&[2, 2, 3, 5]).unwrap();
        for (x, y) in a.iter().zip([0.3086, 0.3086, 0.4629, 0.7715]) {
            assert!((x - y).abs() < 1e-4);
        }
        assert_eq!(normalized(&[1, 0, 0, 0]).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn constructor_validation() {
        let m = |home, away| MatchResult {
            home,
            away,
            home_goals: 0,
            away_goals: 0,
        };
        let names = || vec!["A".to_string(), "B".to_string()];
        assert!(Tournament::new(vec!["A".into()], vec![], None, None).is_err());
        assert!(Tournament::new(names(), vec![m(0, 0)], None, None).is_err());
        assert!(Tournament::new(names(), vec![m(0, 1), m(1, 0)], None, None).is_err());
        assert!(Tournament::new(names(), vec![], None, None).is_err());
        assert!(Tournament::new(names(), vec![m(0, 2)], None, None).is_err());
        assert!(Tournament::new(names(), vec![m(0, 1)], Some(vec![1]), None).is_err());
        assert!(Tournament::new(vec!["A".into(), " ".into()], vec![m(0, 1)], None, None).is_err());
        assert!(Tournament::new(names(), vec![m(1, 0)], Some(vec![1, 2]), Some(3)).is_ok());
    }
}
