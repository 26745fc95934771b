//! Labeled Delannoy paths ("Hanna paths").
//!
//! A path is a sequence of upsteps `U`, downsteps `D` and flatsteps `F` with
//! as many `U`s as `D`s. Slanted steps carry a label in `{1, 2}`, flatsteps a
//! label in `{1, ..., 5}`. Text form concatenates kind letter and label,
//! e.g. `"U2D2F1F5F2"`.
//!
//! Heights start at 0, which is ground level since the path ends where it
//! starts. An upstep leaving height `h >= 0` lies above ground and is matched
//! to the first downstep to its right that returns to `h`; an upstep leaving
//! `h <= -1` lies below ground and is matched to the first downstep to its
//! left that returns to `h`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` accepted by [`enumerate_paths`].
pub const MAX_PATH_ENUM_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path enumeration supports n <= {MAX_PATH_ENUM_N}, got {0}")]
    BoundExceeded(usize),
    #[error("malformed step token at {0:?}")]
    BadToken(String),
    #[error("label {label} not allowed on {kind:?} step")]
    BadLabel { kind: StepKind, label: u8 },
    #[error("path has {ups} upsteps but {downs} downsteps")]
    Unbalanced { ups: usize, downs: usize },
    #[error("json field n = {declared} does not match path length {actual}")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("reduced paths take U, D, F1 and F2 only, got {0:?}")]
    NotReduced(String),
    #[error("expanded path has odd length {0}")]
    OddLength(usize),
    #[error("expanded path has {actual} more D-pairs than U-pairs, expected {expected}")]
    Excess { expected: i64, actual: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    Up,
    Down,
    Flat,
}

impl StepKind {
    pub fn letter(self) -> char {
        match self {
            StepKind::Up => 'U',
            StepKind::Down => 'D',
            StepKind::Flat => 'F',
        }
    }

    pub fn max_label(self) -> u8 {
        match self {
            StepKind::Flat => 5,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    kind: StepKind,
    label: u8,
}

impl Step {
    pub fn new(kind: StepKind, label: u8) -> Result<Self, PathError> {
        if label == 0 || label > kind.max_label() {
            return Err(PathError::BadLabel { kind, label });
        }
        Ok(Step { kind, label })
    }

    pub fn kind(self) -> StepKind {
        self.kind
    }

    pub fn label(self) -> u8 {
        self.label
    }

    const fn of(kind: StepKind, label: u8) -> Step {
        Step { kind, label }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.label)
    }
}

/// All nine labeled steps, ordered by their text tokens.
pub const ALL_STEPS: [Step; 9] = {
    use StepKind::*;
    [
        Step::of(Down, 1),
        Step::of(Down, 2),
        Step::of(Flat, 1),
        Step::of(Flat, 2),
        Step::of(Flat, 3),
        Step::of(Flat, 4),
        Step::of(Flat, 5),
        Step::of(Up, 1),
        Step::of(Up, 2),
    ]
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HannaPath {
    steps: Vec<Step>,
}

impl HannaPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let ups = steps.iter().filter(|s| s.kind == StepKind::Up).count();
        let downs = steps.iter().filter(|s| s.kind == StepKind::Down).count();
        if ups != downs {
            return Err(PathError::Unbalanced { ups, downs });
        }
        Ok(HannaPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// Height before each step, starting at ground level 0.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = 0;
        self.steps
            .iter()
            .map(|s| {
                let before = h;
                h += match s.kind {
                    StepKind::Up => 1,
                    StepKind::Down => -1,
                    StepKind::Flat => 0,
                };
                before
            })
            .collect()
    }

    pub fn upsteps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Up).count()
    }

    /// Number of matched slanted pairs whose labels are not both 1.
    pub fn stat_x(&self) -> usize {
        matching_pairs(self)
            .pairs
            .iter()
            .filter(|&&(u, d)| (self.steps[u].label, self.steps[d].label) != (1, 1))
            .count()
    }

    /// Number of flatsteps labeled 3, 4 or 5.
    pub fn stat_y(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Flat && s.label > 2)
            .count()
    }

    pub fn to_json(&self) -> PathJson {
        PathJson {
            n: self.n(),
            steps: self.to_string(),
        }
    }
}

impl fmt::Display for HannaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

impl FromStr for HannaPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if !bytes.len().is_multiple_of(2) {
            return Err(PathError::BadToken(s.to_string()));
        }
        let steps = bytes
            .chunks(2)
            .map(|tok| {
                let bad = || PathError::BadToken(String::from_utf8_lossy(tok).into_owned());
                let kind = match tok[0] {
                    b'U' => StepKind::Up,
                    b'D' => StepKind::Down,
                    b'F' => StepKind::Flat,
                    _ => return Err(bad()),
                };
                if !tok[1].is_ascii_digit() {
                    return Err(bad());
                }
                Step::new(kind, tok[1] - b'0')
            })
            .collect::<Result<Vec<_>, _>>()?;
        HannaPath::new(steps)
    }
}

/// Wire form: `{"n": 5, "steps": "U2D2F1F5F2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub n: usize,
    pub steps: String,
}

impl TryFrom<&PathJson> for HannaPath {
    type Error = PathError;

    fn try_from(j: &PathJson) -> Result<Self, Self::Error> {
        let p: HannaPath = j.steps.parse()?;
        if p.n() != j.n {
            return Err(PathError::LengthMismatch {
                declared: j.n,
                actual: p.n(),
            });
        }
        Ok(p)
    }
}

/// Streams every Hanna `n`-path once, lexicographic in the step tokens
/// (`D1 < D2 < F1 < ... < F5 < U1 < U2`).
pub fn enumerate_paths(n: usize) -> Result<impl Iterator<Item = HannaPath> + Send, PathError> {
    if n > MAX_PATH_ENUM_N {
        return Err(PathError::BoundExceeded(n));
    }
    let total = 9u64.pow(n as u32);
    Ok((0..total).filter_map(move |code| {
        let mut steps = vec![ALL_STEPS[0]; n];
        let mut c = code;
        let mut balance = 0i64;
        for s in steps.iter_mut().rev() {
            *s = ALL_STEPS[(c % 9) as usize];
            c /= 9;
            balance += match s.kind {
                StepKind::Up => 1,
                StepKind::Down => -1,
                StepKind::Flat => 0,
            };
        }
        (balance == 0).then_some(HannaPath { steps })
    }))
}

/// Pairs `(upstep index, downstep index)`, sorted by upstep index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingPairs {
    pub pairs: Vec<(usize, usize)>,
}

impl MatchingPairs {
    /// Every slanted step of `path` occurs in exactly one pair, and each pair
    /// couples an upstep with a downstep.
    pub fn is_perfect_for(&self, path: &HannaPath) -> bool {
        let mut seen = vec![false; path.n()];
        for &(u, d) in &self.pairs {
            let ok = path.steps.get(u).is_some_and(|s| s.kind == StepKind::Up)
                && path.steps.get(d).is_some_and(|s| s.kind == StepKind::Down)
                && !seen[u]
                && !seen[d];
            if !ok {
                return false;
            }
            seen[u] = true;
            seen[d] = true;
        }
        path.steps
            .iter()
            .zip(&seen)
            .all(|(s, &hit)| hit == (s.kind != StepKind::Flat))
    }
}

/// Matches each upstep with its downstep: a left-to-right stack pass for
/// steps above ground level and a right-to-left pass for steps below it.
pub fn matching_pairs(p: &HannaPath) -> MatchingPairs {
    let heights = p.heights();
    let mut pairs = Vec::with_capacity(p.upsteps());

    let mut open = Vec::new();
    for (i, (s, &h)) in p.steps.iter().zip(&heights).enumerate() {
        match s.kind {
            StepKind::Up if h >= 0 => open.push(i),
            StepKind::Down if h >= 1 => {
                let u = open
                    .pop()
                    .expect("downstep above ground has an open upstep");
                pairs.push((u, i));
            }
            _ => {}
        }
    }

    for (i, (s, &h)) in p.steps.iter().zip(&heights).enumerate().rev() {
        match s.kind {
            StepKind::Up if h <= -1 => open.push(i),
            StepKind::Down if h <= 0 => {
                let u = open
                    .pop()
                    .expect("downstep below ground has an open upstep");
                pairs.push((u, i));
            }
            _ => {}
        }
    }

    pairs.sort_unstable();
    MatchingPairs { pairs }
}

pub fn stat_x(p: &HannaPath) -> usize {
    p.stat_x()
}

pub fn stat_y(p: &HannaPath) -> usize {
    p.stat_y()
}

pub fn stat_upsteps(p: &HannaPath) -> usize {
    p.upsteps()
}

/// Unlabeled slope of an expanded path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Up,
    Down,
}

/// Step of a reduced path: bare slanted steps and flatsteps labeled 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedStep {
    Up,
    Down,
    Flat1,
    Flat2,
}

impl ReducedStep {
    pub const ALL: [ReducedStep; 4] = [
        ReducedStep::Up,
        ReducedStep::Down,
        ReducedStep::Flat1,
        ReducedStep::Flat2,
    ];

    fn expansion(self) -> [Slope; 2] {
        match self {
            ReducedStep::Up => [Slope::Up, Slope::Up],
            ReducedStep::Down => [Slope::Down, Slope::Down],
            ReducedStep::Flat1 => [Slope::Up, Slope::Down],
            ReducedStep::Flat2 => [Slope::Down, Slope::Up],
        }
    }

    fn token(self) -> &'static str {
        match self {
            ReducedStep::Up => "U",
            ReducedStep::Down => "D",
            ReducedStep::Flat1 => "F1",
            ReducedStep::Flat2 => "F2",
        }
    }
}

impl fmt::Display for ReducedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Parses a reduced path such as `"DF1UF2"`. Labeled slanted steps and
/// flatsteps labeled above 2 are rejected.
pub fn parse_reduced(s: &str) -> Result<Vec<ReducedStep>, PathError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let label = chars.next_if(|d| d.is_ascii_digit());
        let step = match (c, label) {
            ('U', None) => ReducedStep::Up,
            ('D', None) => ReducedStep::Down,
            ('F', Some('1')) => ReducedStep::Flat1,
            ('F', Some('2')) => ReducedStep::Flat2,
            ('U' | 'D' | 'F', Some(d)) => return Err(PathError::NotReduced(format!("{c}{d}"))),
            _ => return Err(PathError::BadToken(c.to_string())),
        };
        out.push(step);
    }
    Ok(out)
}

/// Applies `U -> UU`, `D -> DD`, `F1 -> UD`, `F2 -> DU`.
pub fn expand_reduced_path(r: &[ReducedStep]) -> Vec<Slope> {
    r.iter().flat_map(|s| s.expansion()).collect()
}

/// Inverse of [`expand_reduced_path`]; `excess` is the number of `D`s minus
/// the number of `U`s in the reduced path.
pub fn contract_expanded_path(b: &[Slope], excess: i64) -> Result<Vec<ReducedStep>, PathError> {
    if !b.len().is_multiple_of(2) {
        return Err(PathError::OddLength(b.len()));
    }
    let out: Vec<ReducedStep> = b
        .chunks(2)
        .map(|pair| match (pair[0], pair[1]) {
            (Slope::Up, Slope::Up) => ReducedStep::Up,
            (Slope::Down, Slope::Down) => ReducedStep::Down,
            (Slope::Up, Slope::Down) => ReducedStep::Flat1,
            (Slope::Down, Slope::Up) => ReducedStep::Flat2,
        })
        .collect();
    let actual = reduced_excess(&out);
    if actual != excess {
        return Err(PathError::Excess {
            expected: excess,
            actual,
        });
    }
    Ok(out)
}

/// Number of `D`s minus number of `U`s.
pub fn reduced_excess(r: &[ReducedStep]) -> i64 {
    r.iter()
        .map(|s| match s {
            ReducedStep::Down => 1,
            ReducedStep::Up => -1,
            _ => 0,
        })
        .sum()
}
