//! Runs the nine acceptance criteria and prints one line per criterion.
//!
//! `AJKNOTS_ACCEPTANCE_VERBOSE=1` also prints every individual check.

use std::process::ExitCode;

use ajknots::suite::Suite;

fn main() -> ExitCode {
    let verbose = std::env::var_os("AJKNOTS_ACCEPTANCE_VERBOSE").is_some();
    let suite = Suite::new(8);
    let results = suite.run_all(|r| {
        println!("{r}");
        for c in &r.checks {
            if verbose || !c.passed {
                println!("    [{}] {}: {}", if c.passed { "ok" } else { "FAILED" }, c.label, c.detail);
            }
        }
    });
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
