//! Evaluation of a candidate at `t = -1` and comparison with the
//! A-polynomial.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{AnnihilationReport, CandidateAnnihilator, CaseId, MinimalityCertificate, ScanReport};
use crate::algebra::text::format_ml;
use crate::algebra::ZPoly;
use crate::apoly::{apoly_of, BinomialFactor};
use crate::error::{Error, Result};
use crate::torus::SkewOperator;

/// A binomial factor `L M^r - δ` of a polynomial together with its
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: BinomialFactor,
    pub multiplicity: u32,
    /// The factor written monic in `L`, as `L - δ M^{-r}`.
    pub display: String,
}

/// `M^e` rendered with a signed exponent, `1` for `e = 0`.
fn m_power(e: i64) -> String {
    match e {
        0 => "1".to_string(),
        1 => "M".to_string(),
        _ => format!("M^{e}"),
    }
}

/// `L - δ M^{-r}`.
fn monic_label(f: BinomialFactor) -> String {
    let sign = if f.delta == 1 { '-' } else { '+' };
    format!("L {sign} {}", m_power(-f.r))
}

/// `Q(δ M^{-r})` for a polynomial `Q` stored with `L` in the first slot.
fn substitute_root(q: &ZPoly, f: BinomialFactor) -> ZPoly {
    ZPoly::from_terms(q.terms().iter().map(|((k, m), c)| {
        let c = if f.delta == -1 && k.rem_euclid(2) == 1 { -c } else { c.clone() };
        ((0, m - f.r * k), c)
    }))
}

/// Splits off every binomial factor `L M^r - δ` of `p`, a polynomial in
/// `L` (first slot) and `M` (second slot). Returns the factors with their
/// multiplicities, sorted by `(r, δ)`, and the cofactor.
pub fn factor_binomials(p: &ZPoly) -> Result<(Vec<FactorEntry>, ZPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    // A factor `L M^r - δ` contributes an edge of horizontal length `|r|`
    // to the Newton polygon, so `|r|` is bounded by the `M`-span.
    let (m0, m1) = p.m_range().unwrap();
    let span = m1 - m0;
    for r in -span..=span {
        for delta in [-1i8, 1] {
            let f = BinomialFactor { r, delta };
            let fp = f.to_poly();
            let mut mult = 0;
            while rest.t_range().unwrap().1 > rest.t_range().unwrap().0 && substitute_root(&rest, f).is_zero()
            {
                rest = rest.div_exact(&fp).ok_or_else(|| Error::InexactDivision(format!("by {f}")))?;
                mult += 1;
            }
            if mult > 0 {
                out.push(FactorEntry { factor: f, multiplicity: mult, display: monic_label(f) });
            }
        }
    }
    Ok((out, rest))
}

/// The evaluation of a candidate at `t = -1` and its comparison with the
/// A-polynomial of the knot.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AJReport {
    pub knot: String,
    pub case: CaseId,
    pub l_degree: i64,
    /// The normalized recurrence polynomial at `t = -1`.
    pub alpha_at_minus1: String,
    pub factors: Vec<FactorEntry>,
    /// Factors of multiplicity above one; a repeated pair `L ± c` is
    /// written as `L^2 - c^2`.
    pub repeated_factors: Vec<String>,
    /// What remains after removing the binomial factors: a polynomial in
    /// `M` alone when the factorization is complete.
    pub m_factor: String,
    pub complete: bool,
    pub squarefree_part: String,
    pub a_polynomial: String,
    /// True when the distinct binomial factors are exactly the factors of
    /// the A-polynomial and nothing but a polynomial in `M` remains.
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilation: Option<AnnihilationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<MinimalityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
}

impl AJReport {
    /// `Ok` when the squarefree part matches, else
    /// [`Error::MismatchWithAPoly`].
    pub fn require_match(&self) -> Result<()> {
        if self.matches {
            Ok(())
        } else {
            Err(Error::MismatchWithAPoly(format!(
                "{} has squarefree part {} but A-polynomial {}",
                self.knot, self.squarefree_part, self.a_polynomial
            )))
        }
    }
}

/// The normalized recurrence polynomial of `op` at `t = -1`, with `L` in
/// the first slot and `M` in the second. Fails with
/// [`Error::DegreeDrop`] when an extreme coefficient vanishes there.
pub fn alpha_at_minus_one(op: &SkewOperator) -> Result<ZPoly> {
    let norm = op.normalize()?;
    let (_, d) = norm.l_degree()?;
    let mut terms: Vec<((i64, i64), BigInt)> = Vec::new();
    for (k, c) in norm.terms() {
        let v = c.numerator().numer_poly().at_t_minus_one();
        if (k == 0 || k == d) && v.is_zero() {
            return Err(Error::DegreeDrop);
        }
        terms.extend(v.terms().iter().map(|((_, m), c)| ((k, *m), c.clone())));
    }
    Ok(ZPoly::from_terms(terms))
}

fn repeated_labels(factors: &[FactorEntry]) -> Vec<String> {
    let rep: Vec<BinomialFactor> = factors.iter().filter(|e| e.multiplicity > 1).map(|e| e.factor).collect();
    let mut out = Vec::new();
    for f in &rep {
        let partner = BinomialFactor { r: f.r, delta: -f.delta };
        if rep.contains(&partner) {
            if f.delta == 1 {
                out.push(format!("L^2 - {}", m_power(-2 * f.r)));
            }
        } else {
            out.push(monic_label(*f));
        }
    }
    out
}

/// Evaluates the candidate at `t = -1`, factors the result and compares
/// its squarefree part with the A-polynomial.
pub fn evaluate_and_compare(c: &CandidateAnnihilator) -> Result<AJReport> {
    let alpha = alpha_at_minus_one(&c.operator)?;
    let (factors, rest) = factor_binomials(&alpha)?;
    let complete = rest.t_range().map(|(lo, hi)| lo == hi).unwrap_or(false);
    let m_factor = if complete {
        // Drop the `L`-slot to print a polynomial in `M`.
        let k = rest.t_range().unwrap().0;
        format_ml(&rest.mul_monomial(-k, 0))
    } else {
        format_ml(&rest)
    };
    let distinct: Vec<BinomialFactor> = factors.iter().map(|e| e.factor).collect();
    let squarefree = distinct.iter().fold(ZPoly::one(), |acc, f| acc.mul(&f.to_poly()));
    let apoly = apoly_of(&c.params.knot());
    let matches = complete && !rest.is_zero() && distinct == apoly.sorted_factors();
    let (lo, hi) = c.operator.l_degree()?;
    Ok(AJReport {
        knot: c.params.knot().to_string(),
        case: c.case,
        l_degree: hi - lo,
        alpha_at_minus1: format_ml(&alpha),
        repeated_factors: repeated_labels(&factors),
        factors,
        m_factor,
        complete,
        squarefree_part: format_ml(&squarefree),
        a_polynomial: apoly.to_string(),
        matches,
        annihilation: None,
        certificates: None,
        scan: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ml(terms: &[(i64, i64, i64)]) -> ZPoly {
        ZPoly::from_terms(terms.iter().map(|&(l, m, c)| ((l, m), BigInt::from(c))))
    }

    #[test]
    fn finds_squared_pair() {
        // (M^4 L^2 - 1)^2 (L - 1) (M^2 + 1)
        let pair = ml(&[(2, 4, 1), (0, 0, -1)]);
        let p = pair.mul(&pair).mul(&ml(&[(1, 0, 1), (0, 0, -1)])).mul(&ml(&[(0, 2, 1), (0, 0, 1)]));
        let (f, rest) = factor_binomials(&p).unwrap();
        let got: Vec<(i64, i8, u32)> =
            f.iter().map(|e| (e.factor.r, e.factor.delta, e.multiplicity)).collect();
        assert_eq!(got, vec![(0, 1, 1), (2, -1, 2), (2, 1, 2)]);
        assert_eq!(rest, ml(&[(0, 2, 1), (0, 0, 1)]));
        assert_eq!(repeated_labels(&f), vec!["L^2 - M^-4".to_string()]);
    }

    #[test]
    fn irreducible_quadratic_is_left_over() {
        let p = ml(&[(2, 0, 1), (0, 1, 1)]);
        let (f, rest) = factor_binomials(&p).unwrap();
        assert!(f.is_empty());
        assert_eq!(rest, p);
    }
}
