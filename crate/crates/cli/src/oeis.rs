//! Reference sequences from OEIS b-files: bundled fixtures, a local cache,
//! and an optional HTTP fetch.

use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use ec_riordan::Rational;
use num_bigint::BigInt;
use serde::Serialize;

use crate::CliError;

const FIXTURES: [(&str, &str); 4] = [
    ("A000108", include_str!("../fixtures/A000108.txt")),
    ("A010892", include_str!("../fixtures/A010892.txt")),
    ("A023431", include_str!("../fixtures/A023431.txt")),
    ("A025243", include_str!("../fixtures/A025243.txt")),
];

const DEFAULT_BASE_URL: &str = "https://oeis.org";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Fixture,
    Cache,
    Network,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Fixture => "fixture",
            Source::Cache => "cache",
            Source::Network => "network",
        }
    }
}

/// Normalizes `A108`, `a000108` and `000108` to `A000108`.
pub fn normalize_id(id: &str) -> Result<String, CliError> {
    let digits = id.trim().trim_start_matches(['A', 'a']);
    if digits.is_empty() || digits.len() > 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Input(format!("malformed OEIS id {id:?}")));
    }
    Ok(format!("A{digits:0>6}"))
}

/// Parses `n a(n)` lines; blank lines and `#` comments are skipped.
/// Returns the terms in index order starting from the first listed index.
pub fn parse_bfile(text: &str) -> Result<Vec<Rational>, String> {
    let mut terms = Vec::new();
    let mut expected: Option<i64> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v)) = (parts.next(), parts.next()) else {
            return Err(format!("line {}: expected \"n a(n)\"", lineno + 1));
        };
        let n: i64 = n.parse().map_err(|_| format!("line {}: bad index {n:?}", lineno + 1))?;
        let v: BigInt = v.parse().map_err(|_| format!("line {}: bad value {v:?}", lineno + 1))?;
        if let Some(e) = expected {
            if n != e {
                // b-files stop being contiguous only when truncated; keep the contiguous prefix.
                break;
            }
        }
        expected = Some(n + 1);
        terms.push(Rational::from_integer(v));
    }
    if terms.is_empty() {
        return Err("no terms".to_string());
    }
    Ok(terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    pub source: Source,
    #[serde(rename = "match")]
    pub matches: bool,
    /// `given[i]` is compared with `reference[i + offset]`.
    pub offset: i64,
    pub compared: usize,
    pub first_mismatch: Option<usize>,
}

const MAX_OFFSET: i64 = 2;

/// Tries offsets `0, -1, 1, -2, 2` and keeps the first one under which every
/// overlapping term agrees, provided the overlap leaves out at most two
/// given terms. Otherwise reports offset 0 with the first disagreement.
pub fn align(given: &[Rational], reference: &[Rational]) -> (bool, i64, usize, Option<usize>) {
    let overlap = |offset: i64| -> Vec<usize> {
        (0..given.len())
            .filter(|&i| {
                let j = i as i64 + offset;
                j >= 0 && (j as usize) < reference.len()
            })
            .collect()
    };
    let at = |i: usize, offset: i64| &reference[(i as i64 + offset) as usize];
    let needed = given.len().min(reference.len()).saturating_sub(MAX_OFFSET as usize).max(1);
    for offset in [0, -1, 1, -2, 2] {
        let idx = overlap(offset);
        if idx.len() >= needed && idx.iter().all(|&i| &given[i] == at(i, offset)) {
            return (true, offset, idx.len(), None);
        }
    }
    let idx = overlap(0);
    let first = idx.iter().copied().find(|&i| &given[i] != at(i, 0));
    (false, 0, idx.len(), first.or(Some(idx.len())))
}

pub fn fixture(id: &str) -> Option<Vec<Rational>> {
    FIXTURES
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| parse_bfile(text).expect("bundled fixtures are well formed"))
}

fn cache_dir() -> Option<PathBuf> {
    match std::env::var_os("EC_RIORDAN_CACHE") {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => dirs::cache_dir().map(|d| d.join("ec-riordan")),
    }
}

fn bfile_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

fn fetch(id: &str) -> Result<String, CliError> {
    let base = std::env::var("EC_RIORDAN_OEIS_URL").unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
    let url = format!("{}/{id}/{}", base.trim_end_matches('/'), bfile_name(id));
    let agent = ureq::AgentBuilder::new().timeout(Duration::from_secs(20)).build();
    let response = agent.get(&url).call().map_err(|e| CliError::Network(e.to_string()))?;
    response.into_string().map_err(|e| CliError::Network(format!("{url}: {e}")))
}

/// Offline: bundled fixtures only. Online: cache, then network (cached on success).
pub fn reference(id: &str, offline: bool) -> Result<(Vec<Rational>, Source), CliError> {
    if offline {
        return fixture(id)
            .map(|t| (t, Source::Fixture))
            .ok_or_else(|| CliError::Input(format!("{id} has no bundled fixture (offline mode)")));
    }
    let cached = cache_dir().map(|d| d.join(bfile_name(id)));
    if let Some(path) = &cached {
        if let Ok(text) = fs::read_to_string(path) {
            if let Ok(terms) = parse_bfile(&text) {
                return Ok((terms, Source::Cache));
            }
        }
    }
    let text = fetch(id)?;
    let terms = parse_bfile(&text).map_err(|e| CliError::Network(format!("{id}: unreadable b-file: {e}")))?;
    if let Some(path) = &cached {
        // A cache that cannot be written only costs a refetch.
        let _ = path.parent().map(fs::create_dir_all).transpose().and_then(|_| fs::write(path, &text));
    }
    Ok((terms, Source::Network))
}

pub fn compare(id: &str, given: &[Rational], offline: bool) -> Result<Comparison, CliError> {
    let id = normalize_id(id)?;
    let (reference, source) = reference(&id, offline)?;
    let (matches, offset, compared, first_mismatch) = align(given, &reference);
    Ok(Comparison { id, source, matches, offset, compared, first_mismatch })
}
