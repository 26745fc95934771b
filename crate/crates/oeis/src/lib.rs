//! Offline-first cross-check of computed sequences against OEIS b-files.
//!
//! Three sequences are tracked: A000172 (Franel), A005259 (Apéry) and
//! A084771. Their local prefixes are always computed from the closed forms in
//! `bijectlab_core`; nothing is hand-entered.
//!
//! B-files are cached verbatim as `<cache_dir>/<ID>.bfile`. A fetch only
//! touches the network when a [`Transport`] is supplied and the cache is cold;
//! a download is parsed before it is written, and the write goes through a
//! temporary file and a rename, so a failed fetch never disturbs the cache.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use bijectlab_core::exact_counts::{eval_expression, BigCount, ExpressionId};
use bijectlab_core::verifier::{Mismatch, Report};
use num_bigint::BigUint;
use thiserror::Error;

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "BIJECTLAB_CACHE";

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("network error fetching {url}: {message}")]
    Network { url: String, message: String },
    #[error("{source_name} line {line}: {message}: {content:?}")]
    Parse {
        source_name: String,
        line: usize,
        content: String,
        message: &'static str,
    },
    #[error("{0} is not cached and the fetch is offline")]
    NotCached(String),
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("requested depth {depth} but only {available} terms are available")]
    Depth { depth: usize, available: usize },
    #[error("unknown sequence id {0:?}")]
    UnknownId(String),
}

/// A tracked sequence with its locally computed prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRef {
    pub oeis_id: &'static str,
    /// Closed forms that all give this sequence; the first one defines the
    /// local prefix.
    pub forms: Vec<ExpressionId>,
    pub local_prefix: Vec<BigCount>,
}

impl SequenceRef {
    fn build(oeis_id: &'static str, forms: Vec<ExpressionId>, len: usize) -> Self {
        let local_prefix = (0..len as i64)
            .map(|n| eval_expression(forms[0], n).expect("n >= 0"))
            .collect();
        SequenceRef {
            oeis_id,
            forms,
            local_prefix,
        }
    }

    pub fn franel(len: usize) -> Self {
        Self::build(
            "A000172",
            vec![ExpressionId::FranelL, ExpressionId::FranelR],
            len,
        )
    }

    pub fn apery(len: usize) -> Self {
        Self::build(
            "A005259",
            vec![ExpressionId::AperyR, ExpressionId::AperyL],
            len,
        )
    }

    /// A084771, given by four sums and by the Hanna path `(X, Y)` table.
    pub fn hanna(len: usize) -> Self {
        use ExpressionId::*;
        Self::build(
            "A084771",
            vec![Chain3, Chain1, Chain2, Chain4, HannaXY],
            len,
        )
    }

    pub fn all(len: usize) -> Vec<SequenceRef> {
        vec![Self::franel(len), Self::apery(len), Self::hanna(len)]
    }

    pub fn by_id(id: &str, len: usize) -> Result<SequenceRef, OeisError> {
        match id {
            "A000172" => Ok(Self::franel(len)),
            "A005259" => Ok(Self::apery(len)),
            "A084771" => Ok(Self::hanna(len)),
            other => Err(OeisError::UnknownId(other.to_string())),
        }
    }

    /// Checks that every closed form reproduces the local prefix term by term.
    /// Mismatch keys are `[n, form index]`.
    pub fn local_consistency(&self) -> Report {
        let start = Instant::now();
        let mut mismatches = Vec::new();
        for (n, want) in self.local_prefix.iter().enumerate() {
            for (i, &form) in self.forms.iter().enumerate().skip(1) {
                let got = eval_expression(form, n as i64).expect("n >= 0");
                if &got != want {
                    mismatches.push(Mismatch {
                        key: vec![n as i64, i as i64],
                        expected: want.clone(),
                        observed: got,
                    });
                }
            }
        }
        Report {
            id: format!("{}:local", self.oeis_id),
            n: self.local_prefix.len(),
            pass: mismatches.is_empty(),
            mismatches,
            millis: start.elapsed().as_millis(),
        }
    }
}

/// Parsed b-file: `(index, value)` rows in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub terms: Vec<(i64, BigUint)>,
}

impl BFile {
    /// Index of the first term, i.e. the sequence offset.
    pub fn offset(&self) -> Option<i64> {
        self.terms.first().map(|(i, _)| *i)
    }

    pub fn values(&self) -> Vec<BigUint> {
        self.terms.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// Parses `index value` lines, skipping blank lines and `#` comments.
pub fn parse_bfile(text: &str, source_name: &str) -> Result<BFile, OeisError> {
    let mut terms: Vec<(i64, BigUint)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message| OeisError::Parse {
            source_name: source_name.to_string(),
            line: i + 1,
            content: raw.to_string(),
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected two fields"));
        };
        let idx: i64 = idx.parse().map_err(|_| err("bad index"))?;
        let val: BigUint = val.parse().map_err(|_| err("bad value"))?;
        if let Some((prev, _)) = terms.last() {
            if idx != prev + 1 {
                return Err(err("indices are not consecutive"));
            }
        }
        terms.push((idx, val));
    }
    Ok(BFile { terms })
}

pub fn bfile_url(oeis_id: &str) -> String {
    format!("https://oeis.org/{oeis_id}/b{}.txt", &oeis_id[1..])
}

pub fn cache_path(cache_dir: &Path, oeis_id: &str) -> PathBuf {
    cache_dir.join(format!("{oeis_id}.bfile"))
}

/// `$BIJECTLAB_CACHE`, else `$XDG_CACHE_HOME/bijectlab`, else
/// `~/.cache/bijectlab`, else a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    let env = |k: &str| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    if let Some(dir) = env(CACHE_ENV) {
        return dir;
    }
    if let Some(xdg) = env("XDG_CACHE_HOME") {
        return xdg.join("bijectlab");
    }
    if let Some(home) = env("HOME") {
        return home.join(".cache").join("bijectlab");
    }
    std::env::temp_dir().join("bijectlab")
}

/// Source of b-file text.
pub trait Transport {
    fn get(&self, url: &str) -> Result<String, OeisError>;
}

/// HTTPS transport backed by `ureq`.
pub struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String, OeisError> {
        let net = |e: ureq::Error| OeisError::Network {
            url: url.to_string(),
            message: e.to_string(),
        };
        ureq::get(url)
            .call()
            .map_err(net)?
            .body_mut()
            .read_to_string()
            .map_err(net)
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), OeisError> {
    let io_err = |source| OeisError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io_err)
}

/// Reads the cached b-file for `oeis_id`, downloading it through `transport`
/// when the cache is cold. `transport = None` never touches the network.
pub fn fetch_bfile(
    oeis_id: &str,
    cache_dir: &Path,
    transport: Option<&dyn Transport>,
) -> Result<BFile, OeisError> {
    let path = cache_path(cache_dir, oeis_id);
    match fs::read_to_string(&path) {
        Ok(text) => return parse_bfile(&text, &path.display().to_string()),
        Err(e) if e.kind() == io::ErrorKind::NotFound => {}
        Err(source) => return Err(OeisError::Io { path, source }),
    }
    let transport = transport.ok_or_else(|| OeisError::NotCached(oeis_id.to_string()))?;
    let url = bfile_url(oeis_id);
    let text = transport.get(&url)?;
    let parsed = parse_bfile(&text, &url)?;
    write_atomic(&path, &text)?;
    Ok(parsed)
}

/// Term values of the b-file for `oeis_id`, in index order.
pub fn fetch_terms(
    oeis_id: &str,
    cache_dir: &Path,
    transport: Option<&dyn Transport>,
) -> Result<Vec<BigCount>, OeisError> {
    fetch_bfile(oeis_id, cache_dir, transport).map(|b| b.values())
}

/// Compares the first `depth` b-file terms with the local prefix, matching
/// each term by its b-file index. Mismatch keys are `[index]`.
pub fn cross_check(seq: &SequenceRef, bfile: &BFile, depth: usize) -> Result<Report, OeisError> {
    let start = Instant::now();
    if depth > bfile.terms.len() {
        return Err(OeisError::Depth {
            depth,
            available: bfile.terms.len(),
        });
    }
    let mut mismatches = Vec::new();
    for (idx, value) in &bfile.terms[..depth] {
        let local = usize::try_from(*idx)
            .ok()
            .and_then(|i| seq.local_prefix.get(i))
            .ok_or(OeisError::Depth {
                depth,
                available: seq.local_prefix.len(),
            })?;
        if local != value {
            mismatches.push(Mismatch {
                key: vec![*idx],
                expected: local.clone(),
                observed: value.clone(),
            });
        }
    }
    Ok(Report {
        id: seq.oeis_id.to_string(),
        n: depth,
        pass: mismatches.is_empty(),
        mismatches,
        millis: start.elapsed().as_millis(),
    })
}

/// Fetch (cache first) and cross-check in one step.
pub fn cross_check_cached(
    seq: &SequenceRef,
    depth: usize,
    cache_dir: &Path,
    transport: Option<&dyn Transport>,
) -> Result<Report, OeisError> {
    if depth == 0 {
        return cross_check(seq, &BFile { terms: vec![] }, 0);
    }
    let bfile = fetch_bfile(seq.oeis_id, cache_dir, transport)?;
    cross_check(seq, &bfile, depth)
}
