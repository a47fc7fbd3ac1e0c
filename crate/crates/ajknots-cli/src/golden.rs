//! Golden files: recorded command outputs compared byte for byte.
//!
//! A golden file `*.golden` starts with two header lines,
//!
//! ```text
//! # args: apoly T(3,2)
//! # exit: 0
//! ```
//!
//! followed by the exact standard output of `ajknots <args>`.

use std::fmt;
use std::fs;
use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::commands::run;
use crate::Cli;

#[derive(Debug, Serialize, Deserialize)]
pub struct GoldenResult {
    pub file: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for GoldenResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "golden {} {}", self.file, if self.passed { "PASS" } else { "FAIL" })?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// Parses the header of a golden file into arguments, exit code and the
/// expected output.
fn parse(text: &str) -> Result<(Vec<String>, u8, &str), String> {
    let (first, rest) = text.split_once('\n').ok_or("missing header")?;
    let (second, body) = rest.split_once('\n').ok_or("missing exit line")?;
    let args = first.strip_prefix("# args:").ok_or("first line must start with '# args:'")?;
    let code = second
        .strip_prefix("# exit:")
        .and_then(|c| c.trim().parse().ok())
        .ok_or("second line must be '# exit: <code>'")?;
    Ok((args.split_whitespace().map(str::to_string).collect(), code, body))
}

fn first_difference(want: &str, got: &str) -> String {
    for (i, (w, g)) in want.lines().zip(got.lines()).enumerate() {
        if w != g {
            return format!("line {} differs", i + 1);
        }
    }
    format!("{} lines expected, {} produced", want.lines().count(), got.lines().count())
}

fn check_file(path: &Path) -> GoldenResult {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let result = |passed, detail: String| GoldenResult { file: file.clone(), passed, detail };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return result(false, e.to_string()),
    };
    let (args, code, want) = match parse(&text) {
        Ok(x) => x,
        Err(e) => return result(false, e),
    };
    if args.first().map(String::as_str) == Some("selftest") {
        return result(false, "a golden file cannot run selftest".to_string());
    }
    let cli = match Cli::try_parse_from(std::iter::once("ajknots".to_string()).chain(args)) {
        Ok(c) => c,
        Err(e) => return result(false, e.to_string().lines().next().unwrap_or_default().to_string()),
    };
    let out = run(&cli);
    if out.code != code {
        return result(false, format!("exit code {} instead of {code}", out.code));
    }
    if out.stdout != want {
        return result(false, first_difference(want, &out.stdout));
    }
    result(true, String::new())
}

/// Compares every `*.golden` file in `dir`, in name order.
pub fn compare_dir(dir: &Path) -> Vec<GoldenResult> {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            return vec![GoldenResult {
                file: dir.display().to_string(),
                passed: false,
                detail: e.to_string(),
            }]
        }
    };
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return vec![GoldenResult {
            file: dir.display().to_string(),
            passed: false,
            detail: "no golden files".to_string(),
        }];
    }
    paths.iter().map(|p| check_file(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_parsed() {
        let (args, code, body) = parse("# args: apoly T(3,2)\n# exit: 0\nknot T(3,2)\n").unwrap();
        assert_eq!(args, vec!["apoly", "T(3,2)"]);
        assert_eq!(code, 0);
        assert_eq!(body, "knot T(3,2)\n");
        assert!(parse("apoly\n# exit: 0\n").is_err());
    }
}
