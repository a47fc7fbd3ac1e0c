//! Exact annihilation checks on a range of colors.

use std::ops::RangeInclusive;
use std::sync::Mutex;
use std::thread;

use serde::{Deserialize, Serialize};

use super::CandidateAnnihilator;
use crate::algebra::ratfunc::reduce_univariate;
use crate::error::{Error, Result};
use crate::jones::JonesSequence;
use crate::torus::{Sequence, SkewOperator};

/// What to do when a coefficient denominator vanishes at `M = t^{2n}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollapsePolicy {
    /// Stop with [`Error::DenominatorCollapse`].
    #[default]
    Fail,
    /// Record the color as skipped and continue.
    Skip,
}

/// Outcome of [`check_annihilation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    /// True when every checked color gives zero.
    pub ok: bool,
    /// Colors where the value was computed.
    pub checked: Vec<i64>,
    /// Colors skipped because a denominator vanished.
    pub skipped: Vec<i64>,
    /// The first color with a nonzero value and that value.
    pub failure: Option<(i64, String)>,
}

/// Applies `op` to `seq` at every color in `ns`, in parallel, and reports
/// the first nonzero value.
pub fn check_operator<S: Sequence + Sync + ?Sized>(
    op: &SkewOperator,
    seq: &S,
    ns: RangeInclusive<i64>,
    policy: CollapsePolicy,
) -> Result<AnnihilationReport> {
    let (lo, hi) = op.l_degree()?;
    // Fill the caches in order first so workers only read them.
    for n in *ns.start() + lo..=*ns.end() + hi {
        seq.term(n);
    }
    let colors: Vec<i64> = ns.collect();
    let results: Mutex<Vec<(i64, Result<(bool, String)>)>> = Mutex::new(Vec::new());
    let next = Mutex::new(0usize);
    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(colors.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = {
                    let mut g = next.lock().expect("work index lock");
                    let i = *g;
                    *g += 1;
                    i
                };
                let Some(&n) = colors.get(idx) else { break };
                let r = op.apply_unreduced(seq, n).map(|(num, den)| {
                    if num.is_zero() {
                        (true, String::new())
                    } else {
                        let v = reduce_univariate(&num, &den);
                        (false, format!("({})/({})", v.num, v.den))
                    }
                });
                results.lock().expect("result lock").push((n, r));
            });
        }
    });
    let mut results = results.into_inner().expect("result lock");
    results.sort_by_key(|(n, _)| *n);
    let mut report = AnnihilationReport { ok: true, checked: vec![], skipped: vec![], failure: None };
    for (n, r) in results {
        match r {
            Ok((true, _)) => report.checked.push(n),
            Ok((false, residual)) => {
                report.checked.push(n);
                if report.failure.is_none() {
                    report.ok = false;
                    report.failure = Some((n, residual));
                }
            }
            Err(Error::DenominatorCollapse { n }) if policy == CollapsePolicy::Skip => report.skipped.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Checks that the candidate annihilates the colored Jones polynomial of
/// its knot at every color in `ns`.
pub fn check_annihilation(
    c: &CandidateAnnihilator,
    ns: RangeInclusive<i64>,
    policy: CollapsePolicy,
) -> Result<AnnihilationReport> {
    let seq = JonesSequence::new(c.params.knot());
    check_operator(&c.operator, &seq, ns, policy)
}
