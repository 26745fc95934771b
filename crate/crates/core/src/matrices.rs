//! Two-row matrices over `{1, 2, 3}`.
//!
//! A matrix carries no class tag. Membership in the abelian, offset and Hanna
//! classes is always decided by predicate:
//!
//! * abelian: the bottom row is a rearrangement of the top row;
//! * offset `a`: equal numbers of 1s per row, and the top row has `a` more 3s;
//! * Hanna: equal numbers of 1s per row.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` enumerated by brute filtering of all `3^(2n)` matrices.
pub const BRUTE_FILTER_MAX_N: usize = 8;
/// Largest `n` accepted by [`enumerate_matrices`].
pub const MAX_MATRIX_ENUM_N: usize = 12;
/// Largest `n` accepted by [`sample_matrix`].
pub const MAX_SAMPLE_N: usize = 16;
/// Rejection sampling gives up after this many draws.
pub const MAX_SAMPLE_ATTEMPTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix enumeration supports n <= {MAX_MATRIX_ENUM_N}, got {0}")]
    BoundExceeded(usize),
    #[error("sampling supports n <= {MAX_SAMPLE_N}, got {0}")]
    SampleBoundExceeded(usize),
    #[error("no matrix of the class found in {0} draws")]
    SampleAttemptsExhausted(u64),
    #[error("rows have different lengths ({top} vs {bottom})")]
    RowLengths { top: usize, bottom: usize },
    #[error("entry {0:?} is not one of 1, 2, 3")]
    BadEntry(char),
    #[error("json field n = {declared} does not match row length {actual}")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("matrix is not Hanna (rows hold {top} and {bottom} ones)")]
    NotHanna { top: usize, bottom: usize },
    #[error("unknown matrix class {0:?}")]
    BadClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixClass {
    Abelian,
    Offset(i64),
    Hanna,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixClass::Abelian => write!(f, "abelian"),
            MatrixClass::Offset(a) => write!(f, "offset:{a}"),
            MatrixClass::Hanna => write!(f, "hanna"),
        }
    }
}

impl FromStr for MatrixClass {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abelian" => Ok(MatrixClass::Abelian),
            "hanna" => Ok(MatrixClass::Hanna),
            _ => s
                .strip_prefix("offset:")
                .and_then(|a| a.parse().ok())
                .map(MatrixClass::Offset)
                .ok_or_else(|| MatrixError::BadClass(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_abelian: bool,
    /// Top-row 3s minus bottom-row 3s; defined only for Hanna matrices.
    pub offset_a: Option<i64>,
    pub is_hanna: bool,
}

/// Counts of 1s, 2s and 3s in a row.
fn parikh(row: &[u8]) -> [usize; 3] {
    let mut c = [0; 3];
    for &x in row {
        c[(x - 1) as usize] += 1;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoRowMatrix {
    top: Vec<u8>,
    bottom: Vec<u8>,
}

impl TwoRowMatrix {
    pub fn new(top: Vec<u8>, bottom: Vec<u8>) -> Result<Self, MatrixError> {
        if top.len() != bottom.len() {
            return Err(MatrixError::RowLengths {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        if let Some(&x) = top.iter().chain(&bottom).find(|x| !(1..=3).contains(*x)) {
            return Err(MatrixError::BadEntry(char::from(b'0'.wrapping_add(x))));
        }
        Ok(TwoRowMatrix { top, bottom })
    }

    /// Parses two digit strings, e.g. `("13132", "31132")`.
    pub fn from_rows(top: &str, bottom: &str) -> Result<Self, MatrixError> {
        let digits = |s: &str| {
            s.chars()
                .map(|c| match c {
                    '1'..='3' => Ok(c as u8 - b'0'),
                    other => Err(MatrixError::BadEntry(other)),
                })
                .collect::<Result<Vec<u8>, _>>()
        };
        TwoRowMatrix::new(digits(top)?, digits(bottom)?)
    }

    pub fn from_columns(cols: impl IntoIterator<Item = (u8, u8)>) -> Result<Self, MatrixError> {
        let (top, bottom) = cols.into_iter().unzip();
        TwoRowMatrix::new(top, bottom)
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[u8] {
        &self.top
    }

    pub fn bottom(&self) -> &[u8] {
        &self.bottom
    }

    pub fn columns(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.top.iter().copied().zip(self.bottom.iter().copied())
    }

    pub fn top_string(&self) -> String {
        self.top.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn bottom_string(&self) -> String {
        self.bottom.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn classify(&self) -> Classification {
        let t = parikh(&self.top);
        let b = parikh(&self.bottom);
        let is_hanna = t[0] == b[0];
        Classification {
            is_abelian: t == b,
            offset_a: is_hanna.then(|| t[2] as i64 - b[2] as i64),
            is_hanna,
        }
    }

    pub fn is_in(&self, class: MatrixClass) -> bool {
        let c = self.classify();
        match class {
            MatrixClass::Abelian => c.is_abelian,
            MatrixClass::Offset(a) => c.offset_a == Some(a),
            MatrixClass::Hanna => c.is_hanna,
        }
    }

    /// Number of `(1/1)` columns.
    pub fn ones_columns(&self) -> usize {
        self.columns().filter(|&c| c == (1, 1)).count()
    }

    /// Number of 2s and 3s in the top row.
    pub fn top_non1(&self) -> usize {
        self.top.iter().filter(|&&x| x != 1).count()
    }

    /// Number of columns `(p/q)` with `p > 1` and `q < 3`.
    pub fn pq_columns(&self) -> usize {
        self.columns().filter(|&(p, q)| p > 1 && q < 3).count()
    }

    /// Number of columns `(1/2)` or `(1/3)`.
    pub fn top1_bottom_non1_columns(&self) -> usize {
        self.columns().filter(|&(p, q)| p == 1 && q != 1).count()
    }

    /// The common number of 1s per row of a Hanna matrix.
    pub fn row_ones(&self) -> Result<usize, MatrixError> {
        let top = parikh(&self.top)[0];
        let bottom = parikh(&self.bottom)[0];
        if top != bottom {
            return Err(MatrixError::NotHanna { top, bottom });
        }
        Ok(top)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n(),
            top: self.top_string(),
            bottom: self.bottom_string(),
        }
    }
}

impl fmt::Display for TwoRowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.top_string(), self.bottom_string())
    }
}

/// Wire form: `{"n": 5, "top": "13132", "bottom": "31132"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub top: String,
    pub bottom: String,
}

impl TryFrom<&MatrixJson> for TwoRowMatrix {
    type Error = MatrixError;

    fn try_from(j: &MatrixJson) -> Result<Self, Self::Error> {
        let m = TwoRowMatrix::from_rows(&j.top, &j.bottom)?;
        if m.n() != j.n {
            return Err(MatrixError::LengthMismatch {
                declared: j.n,
                actual: m.n(),
            });
        }
        Ok(m)
    }
}

/// Streams every `n`-matrix of `class` once, ordered lexicographically by
/// top row, then bottom row.
///
/// Uses [`enumerate_brute`] up to [`BRUTE_FILTER_MAX_N`] and
/// [`enumerate_constructive`] beyond; both yield the same sequence.
pub fn enumerate_matrices(
    n: usize,
    class: MatrixClass,
) -> Result<Box<dyn Iterator<Item = TwoRowMatrix> + Send>, MatrixError> {
    if n > MAX_MATRIX_ENUM_N {
        return Err(MatrixError::BoundExceeded(n));
    }
    if n <= BRUTE_FILTER_MAX_N {
        Ok(Box::new(enumerate_brute(n, class)))
    } else {
        Ok(Box::new(enumerate_constructive(n, class)))
    }
}

/// Filters all `3^(2n)` matrices by the class predicate.
pub fn enumerate_brute(n: usize, class: MatrixClass) -> impl Iterator<Item = TwoRowMatrix> + Send {
    let total = 3u64.pow(2 * n as u32);
    (0..total).filter_map(move |code| {
        let mut digits = vec![0u8; 2 * n];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = (c % 3) as u8 + 1;
            c /= 3;
        }
        let bottom = digits.split_off(n);
        let m = TwoRowMatrix {
            top: digits,
            bottom,
        };
        m.is_in(class).then_some(m)
    })
}

/// All words of length `n` over `{1,2,3}` in lexicographic order.
fn words(n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = 3u64.pow(n as u32);
    (0..total).map(move |code| {
        let mut w = vec![0u8; n];
        let mut c = code;
        for d in w.iter_mut().rev() {
            *d = (c % 3) as u8 + 1;
            c /= 3;
        }
        w
    })
}

/// Lexicographic words with exactly `ones` 1s and, when given, exactly
/// `threes` 3s.
fn constrained_words(n: usize, ones: usize, threes: Option<usize>, out: &mut Vec<Vec<u8>>) {
    fn rec(
        word: &mut Vec<u8>,
        n: usize,
        ones: usize,
        threes: Option<usize>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let left = n - word.len();
        if left == 0 {
            if ones == 0 && threes.is_none_or(|t| t == 0) {
                out.push(word.clone());
            }
            return;
        }
        if ones + threes.unwrap_or(0) > left {
            return;
        }
        for sym in 1..=3u8 {
            let (o, t) = match sym {
                1 if ones > 0 => (ones - 1, threes),
                2 => (ones, threes),
                3 => match threes {
                    Some(0) => continue,
                    Some(t) => (ones, Some(t - 1)),
                    None => (ones, None),
                },
                _ => continue,
            };
            word.push(sym);
            rec(word, n, o, t, out);
            word.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, ones, threes, out);
}

/// Generates the class directly: for each top row, the bottom rows with the
/// required counts of 1s (and 3s), in lexicographic order.
pub fn enumerate_constructive(
    n: usize,
    class: MatrixClass,
) -> impl Iterator<Item = TwoRowMatrix> + Send {
    words(n).flat_map(move |top| {
        let [ones, _, threes] = parikh(&top);
        let threes = match class {
            MatrixClass::Hanna => Some(None),
            MatrixClass::Abelian => Some(Some(threes)),
            MatrixClass::Offset(a) => usize::try_from(threes as i64 - a).ok().map(Some),
        };
        let mut bottoms = Vec::new();
        if let Some(t) = threes {
            constrained_words(n, ones, t, &mut bottoms);
        }
        bottoms.into_iter().map(move |bottom| TwoRowMatrix {
            top: top.clone(),
            bottom,
        })
    })
}

/// Seeded rejection sampler, uniform over a class.
pub struct MatrixSampler {
    rng: ChaCha8Rng,
    max_attempts: u64,
}

impl MatrixSampler {
    pub fn new(seed: u64) -> Self {
        MatrixSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_attempts: MAX_SAMPLE_ATTEMPTS,
        }
    }

    pub fn with_max_attempts(mut self, max_attempts: u64) -> Self {
        self.max_attempts = max_attempts;
        self
    }

    /// Draws uniformly from the `3^(2n)` cube until a member of `class` appears.
    pub fn sample(&mut self, n: usize, class: MatrixClass) -> Result<TwoRowMatrix, MatrixError> {
        if n > MAX_SAMPLE_N {
            return Err(MatrixError::SampleBoundExceeded(n));
        }
        for _ in 0..self.max_attempts {
            let mut row = || {
                (0..n)
                    .map(|_| self.rng.random_range(1..=3u8))
                    .collect::<Vec<_>>()
            };
            let top = row();
            let bottom = row();
            let m = TwoRowMatrix { top, bottom };
            if m.is_in(class) {
                return Ok(m);
            }
        }
        Err(MatrixError::SampleAttemptsExhausted(self.max_attempts))
    }
}

/// One uniform sample of `class`; the same seed always gives the same matrix.
pub fn sample_matrix(n: usize, class: MatrixClass, seed: u64) -> Result<TwoRowMatrix, MatrixError> {
    MatrixSampler::new(seed).sample(n, class)
}
