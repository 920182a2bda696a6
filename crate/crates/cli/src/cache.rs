//! On-disk memoization of Smith normal forms, enabled by `HOPFCALC_CACHE`.
//!
//! Entries are keyed by the SHA-256 of the matrix and re-verified on load;
//! anything unreadable or inconsistent is recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use hopfcalc_core::exactlinalg::{det_bareiss, smith_normal_form, IntMatrix, SmithForm};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VAR: &str = "HOPFCALC_CACHE";

#[derive(Serialize, Deserialize)]
struct Entry {
    u: Vec<Vec<String>>,
    v: Vec<Vec<String>>,
    d: Vec<Vec<String>>,
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_VAR)
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
}

pub fn matrix_key(m: &IntMatrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{}", m.nrows(), m.ncols()));
    for x in m.entries() {
        h.update(b",");
        h.update(x.to_string());
    }
    hex::encode(h.finalize())
}

/// Smith form of `m`, going through the cache directory when one is set.
pub fn smith_cached(m: &IntMatrix) -> SmithForm {
    match cache_dir() {
        Some(dir) => smith_in(&dir, m),
        None => smith_normal_form(m),
    }
}

pub fn smith_in(dir: &Path, m: &IntMatrix) -> SmithForm {
    let path = dir.join(format!("{}.json", matrix_key(m)));
    if let Some(s) = load(&path).filter(|s| verifies(m, s)) {
        return s;
    }
    let s = smith_normal_form(m);
    // the cache is best effort
    let _ = store(dir, &path, &s);
    s
}

fn load(path: &Path) -> Option<SmithForm> {
    let text = fs::read_to_string(path).ok()?;
    let e: Entry = serde_json::from_str(&text).ok()?;
    Some(SmithForm {
        u: from_strings(&e.u)?,
        v: from_strings(&e.v)?,
        d: from_strings(&e.d)?,
    })
}

fn store(dir: &Path, path: &Path, s: &SmithForm) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let e = Entry {
        u: to_strings(&s.u),
        v: to_strings(&s.v),
        d: to_strings(&s.d),
    };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string(&e)?)?;
    fs::rename(tmp, path)
}

fn verifies(m: &IntMatrix, s: &SmithForm) -> bool {
    let unit = |x: &IntMatrix| det_bareiss(x).map(|d| d.abs().is_one()).unwrap_or(false);
    let Ok(prod) = s.u.checked_mul(m).and_then(|x| x.checked_mul(&s.v)) else {
        return false;
    };
    prod == s.d && unit(&s.u) && unit(&s.v) && s.d == diagonal_part(&s.d)
}

/// `d` with everything off the diagonal zeroed.
fn diagonal_part(d: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(d.nrows(), d.ncols());
    for i in 0..d.nrows().min(d.ncols()) {
        out[(i, i)] = d[(i, i)].clone();
    }
    out
}

fn to_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn from_strings(rows: &[Vec<String>]) -> Option<IntMatrix> {
    let parsed: Option<Vec<Vec<BigInt>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.parse().ok()).collect())
        .collect();
    IntMatrix::from_rows(parsed?).ok()
}
