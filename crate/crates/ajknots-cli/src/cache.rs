//! Disk cache of colored Jones values.
//!
//! The directory named by `AJKNOTS_CACHE_DIR` holds one file,
//! `jones-cache.txt`, made of two-line records: a header `knot;n` and the
//! value `J(n)` on the next line in the polynomial grammar of the library.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use ajknots::algebra::parse_univariate;
use ajknots::jones::{JonesSequence, KnotExpr};

pub const CACHE_ENV: &str = "AJKNOTS_CACHE_DIR";
const CACHE_FILE: &str = "jones-cache.txt";

fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(CACHE_FILE))
}

/// Records as `(knot, n) -> polynomial text`.
fn read_records(path: &PathBuf) -> BTreeMap<(String, i64), String> {
    let Ok(text) = fs::read_to_string(path) else { return BTreeMap::new() };
    let mut out = BTreeMap::new();
    let mut lines = text.lines();
    while let (Some(header), Some(value)) = (lines.next(), lines.next()) {
        let Some((knot, n)) = header.rsplit_once(';') else { continue };
        if let Ok(n) = n.trim().parse::<i64>() {
            out.insert((knot.trim().to_string(), n), value.trim().to_string());
        }
    }
    out
}

/// Seeds `seq` from the cache. Returns warnings for unreadable records.
pub fn load(seq: &JonesSequence) -> Vec<String> {
    let Some(path) = cache_path() else { return Vec::new() };
    let key = seq.knot().to_string();
    let mut warnings = Vec::new();
    for ((knot, n), value) in read_records(&path) {
        if knot != key {
            continue;
        }
        match parse_univariate(&value) {
            Ok(v) => seq.seed(n, v),
            Err(e) => warnings.push(format!("cache record {knot};{n} ignored: {e}")),
        }
    }
    warnings
}

/// Writes the values known to `seq` back to the cache, keeping the records
/// of other knots.
pub fn store(seq: &JonesSequence) -> Vec<String> {
    let Some(path) = cache_path() else { return Vec::new() };
    if matches!(seq.knot(), KnotExpr::Unknot) {
        return Vec::new();
    }
    let mut records = read_records(&path);
    let key = seq.knot().to_string();
    for (n, v) in seq.known_values() {
        records.insert((key.clone(), n), v.to_string());
    }
    let text: String = records.iter().map(|((k, n), v)| format!("{k};{n}\n{v}\n")).collect();
    let written = path.parent().map(fs::create_dir_all).transpose().and_then(|_| fs::write(&path, text));
    match written {
        Ok(()) => Vec::new(),
        Err(e) => vec![format!("cannot write {}: {e}", path.display())],
    }
}
