//! Brute-force search for annihilators with coefficients in a finite
//! window of monomials.
//!
//! An operator `Σ_{i ≤ d} Σ_{k, j} c_{i,k,j} t^j M^k L^i` annihilates the
//! sequence at color `n` when every `t`-coefficient of
//! `Σ c_{i,k,j} t^{j + 2nk} J(n+i)` vanishes. Collecting these equations
//! over a range of colors gives an integer matrix in the unknowns
//! `c_{i,k,j}`. A full rank modulo a prime proves that no such operator
//! exists in the window; otherwise a kernel vector is recovered over `Q`
//! and checked on a longer range of colors.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::check::{check_operator, CollapsePolicy};
use crate::algebra::{RationalFunction, ZPoly};
use crate::error::{Error, Result};
use crate::jones::{JonesSequence, KnotExpr};
use crate::linalg::{rank_mod_prime, rational_kernel, SparseRow};
use crate::torus::SkewOperator;

/// The monomials `t^j M^k` allowed in each coefficient of the ansatz.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanWindow {
    /// Every `M^k t^j` with `k` in `m` and `j` in `t`, for every
    /// coefficient.
    Box { m: (i64, i64), t: (i64, i64) },
    /// The same list of `(t, M)` exponents for every coefficient.
    Shared(Vec<(i64, i64)>),
    /// One list of `(t, M)` exponents per coefficient, starting at `L^0`.
    PerCoefficient(Vec<Vec<(i64, i64)>>),
}

impl ScanWindow {
    /// The support of each coefficient of `op`, as a per-coefficient
    /// window. Coefficients must be Laurent polynomials.
    pub fn support_of(op: &SkewOperator) -> Result<Self> {
        let (lo, hi) = op.l_degree()?;
        let mut out = Vec::new();
        for i in lo..=hi {
            let c = op.coeff(i);
            if !c.is_laurent() {
                return Err(Error::InvalidParams(format!("coefficient of L^{i} is not a polynomial")));
            }
            out.push(c.numerator().numer_poly().terms().iter().map(|(e, _)| *e).collect());
        }
        Ok(ScanWindow::PerCoefficient(out))
    }

    /// The union of all coefficient supports, shared by every coefficient.
    pub fn shared_support_of(op: &SkewOperator) -> Result<Self> {
        let ScanWindow::PerCoefficient(v) = Self::support_of(op)? else { unreachable!() };
        let mut all: Vec<(i64, i64)> = v.into_iter().flatten().collect();
        all.sort_unstable();
        all.dedup();
        Ok(ScanWindow::Shared(all))
    }

    /// The columns of the linear system as `(i, t, M)` triples.
    fn columns(&self, d: i64) -> Result<Vec<(i64, i64, i64)>> {
        let mut cols = Vec::new();
        match self {
            ScanWindow::Box { m, t } => {
                if m.0 > m.1 || t.0 > t.1 {
                    return Err(Error::InvalidParams(format!("empty scan window {self:?}")));
                }
                for i in 0..=d {
                    for k in m.0..=m.1 {
                        for j in t.0..=t.1 {
                            cols.push((i, j, k));
                        }
                    }
                }
            }
            ScanWindow::Shared(v) => {
                for i in 0..=d {
                    cols.extend(v.iter().map(|&(j, k)| (i, j, k)));
                }
            }
            ScanWindow::PerCoefficient(v) => {
                if v.len() as i64 != d + 1 {
                    return Err(Error::InvalidParams(format!(
                        "{} coefficient supports given for L-degree {d}",
                        v.len()
                    )));
                }
                for (i, sup) in v.iter().enumerate() {
                    cols.extend(sup.iter().map(|&(j, k)| (i as i64, j, k)));
                }
            }
        }
        Ok(cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub knot: String,
    /// Largest `L`-exponent allowed in the ansatz.
    pub l_degree_bound: i64,
    pub window: ScanWindow,
    pub n_range: (i64, i64),
    pub unknowns: usize,
    pub equations: usize,
    pub prime: u64,
    pub modular_rank: usize,
    /// Kernel dimension modulo the prime, an upper bound for the kernel
    /// dimension over `Q`. Zero proves that no annihilator exists in the
    /// window.
    pub kernel_dimension: usize,
    /// A nonzero annihilator from the rational kernel, if one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Whether the witness annihilates the sequence on a range of colors
    /// half again as long as the one used to find it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_verified: Option<bool>,
    /// The witness itself.
    #[serde(skip)]
    pub witness_operator: Option<SkewOperator>,
}

/// Integer coefficients of `J(n), …, J(n+d)` after clearing a common
/// denominator.
fn integer_values(seq: &JonesSequence, n: i64, d: i64) -> Result<Vec<Vec<(i64, BigInt)>>> {
    let vals: Vec<_> = (0..=d).map(|i| seq.try_value(n + i)).collect::<Result<_>>()?;
    let mut l = BigInt::one();
    for v in &vals {
        for (_, c) in v.terms() {
            l = l.lcm(c.denom());
        }
    }
    Ok(vals
        .iter()
        .map(|v| {
            v.terms()
                .into_iter()
                .map(|(e, c)| (e, (c * num_rational::BigRational::from_integer(l.clone())).to_integer()))
                .collect()
        })
        .collect())
}

fn build_rows(
    seq: &JonesSequence,
    d: i64,
    columns: &[(i64, i64, i64)],
    ns: RangeInclusive<i64>,
) -> Result<Vec<SparseRow>> {
    let mut rows = Vec::new();
    for n in ns {
        let vals = integer_values(seq, n, d)?;
        let mut by_exp: BTreeMap<i64, SparseRow> = BTreeMap::new();
        for (col, &(i, j, k)) in columns.iter().enumerate() {
            let shift = j + 2 * n * k;
            for (e, c) in &vals[i as usize] {
                by_exp.entry(e + shift).or_default().push((col, c.clone()));
            }
        }
        rows.extend(by_exp.into_values());
    }
    Ok(rows)
}

fn witness_operator(v: &[BigInt], columns: &[(i64, i64, i64)]) -> SkewOperator {
    let mut by_l: BTreeMap<i64, Vec<((i64, i64), BigInt)>> = BTreeMap::new();
    for (c, &(i, j, k)) in v.iter().zip(columns) {
        if !c.is_zero() {
            by_l.entry(i).or_default().push(((j, k), c.clone()));
        }
    }
    SkewOperator::from_terms(by_l.into_iter().map(|(i, terms)| {
        let poly = ZPoly::from_terms(terms);
        (i, RationalFunction::from_zpolys(&poly, &ZPoly::one()).expect("unit denominator"))
    }))
}

fn satisfies(rows: &[SparseRow], v: &[BigInt]) -> bool {
    rows.iter().all(|r| r.iter().map(|(c, x)| x * &v[*c]).sum::<BigInt>().is_zero())
}

/// Searches for annihilators of `knot`'s colored Jones polynomial of
/// `L`-degree at most `d` with coefficients in `window`, using the
/// equations at the colors `ns`.
pub fn minimality_scan(
    knot: &KnotExpr,
    d: i64,
    window: ScanWindow,
    ns: RangeInclusive<i64>,
) -> Result<ScanReport> {
    if d < 0 {
        return Err(Error::InvalidParams(format!("negative L-degree {d}")));
    }
    if *ns.start() < 1 || ns.is_empty() {
        return Err(Error::InvalidParams(format!("color range {ns:?} must start at 1 or above")));
    }
    let seq = JonesSequence::new(knot.clone());
    let columns = window.columns(d)?;
    let ncols = columns.len();
    let rows = build_rows(&seq, d, &columns, ns.clone())?;
    let rank = rank_mod_prime(&rows, ncols, 0);
    let kernel_dimension = ncols - rank.rank;
    let mut report = ScanReport {
        knot: knot.to_string(),
        l_degree_bound: d,
        window,
        n_range: (*ns.start(), *ns.end()),
        unknowns: ncols,
        equations: rows.len(),
        prime: rank.prime,
        modular_rank: rank.rank,
        kernel_dimension,
        witness: None,
        witness_verified: None,
        witness_operator: None,
    };
    if kernel_dimension == 0 {
        return Ok(report);
    }
    let pivots: Vec<SparseRow> = rank.pivot_rows.iter().map(|&i| rows[i].clone()).collect();
    let kernel = rational_kernel(&pivots, ncols);
    if let Some(v) = kernel.into_iter().find(|v| satisfies(&rows, v)) {
        let op = witness_operator(&v, &columns);
        let len = ns.end() - ns.start() + 1;
        let longer = *ns.start()..=*ns.end() + (len + 1) / 2;
        let verified = check_operator(&op, &seq, longer, CollapsePolicy::Fail)?.ok;
        report.witness = Some(op.to_string());
        report.witness_verified = Some(verified);
        report.witness_operator = Some(op);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_has_first_order_annihilator() {
        // (M - M^-1) L - (t^2 M - t^-2 M^-1) is the only one in the window.
        let w = ScanWindow::Box { m: (-1, 1), t: (-2, 2) };
        let r = minimality_scan(&KnotExpr::Unknot, 1, w.clone(), 1..=6).unwrap();
        assert_eq!(r.kernel_dimension, 1);
        assert_eq!(r.witness_verified, Some(true));
        let r0 = minimality_scan(&KnotExpr::Unknot, 0, w, 1..=6).unwrap();
        assert_eq!(r0.kernel_dimension, 0);
    }
}
