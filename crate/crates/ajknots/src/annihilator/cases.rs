//! The seven candidate operators.
//!
//! Each operator is a product of factors of `L`-degree one or two,
//! separated by scalar factors, assembled left to right exactly as
//! written. Inside coefficients, `[n+j]`, `[2n+j]` and `δ(·,·,n+j)` are
//! rational functions of `t` and `M = t^{2n}`.

use std::collections::BTreeMap;

use super::{classify, CandidateAnnihilator, CaseId, CaseParams};
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::jones::{bracket2_symbolic, bracket_symbolic, quantum_difference, DeltaSpec, TorusKnotParam};
use crate::torus::SkewOperator;

type Rf = RationalFunction;

pub(super) fn mono(et: i64, em: i64) -> Rf {
    Rf::monomial(et, em, 1)
}

pub(super) fn br(j: i64) -> Rf {
    bracket_symbolic(j)
}

pub(super) fn br2(j: i64) -> Rf {
    bracket2_symbolic(j)
}

pub(super) fn delta(p: i64, q: i64, j: i64) -> Rf {
    DeltaSpec::new(p, q, j).to_rational()
}

fn scalar(x: Rf) -> SkewOperator {
    SkewOperator::scalar(x)
}

/// `c1 L^k + c0`.
fn binomial(k: i64, c1: Rf, c0: Rf) -> SkewOperator {
    SkewOperator::from_terms([(k, c1), (0, c0)])
}

fn l_minus_one() -> SkewOperator {
    binomial(1, Rf::one(), Rf::from_int(-1))
}

fn chain(factors: Vec<SkewOperator>) -> SkewOperator {
    factors.iter().fold(SkewOperator::one(), |acc, f| acc.op_mul(f))
}

/// Inverse of a named auxiliary function, refusing the zero function.
fn inv(name: &str, x: &Rf) -> Result<Rf> {
    if x.is_zero() {
        return Err(Error::AuxVanishes(name.to_string()));
    }
    x.invert()
}

fn nonzero(name: &str, x: &Rf) -> Result<()> {
    if x.is_zero() {
        Err(Error::AuxVanishes(name.to_string()))
    } else {
        Ok(())
    }
}

struct Built {
    operator: SkewOperator,
    aux: Vec<(&'static str, Rf)>,
}

fn c3(p: i64, q: i64, a: i64, b: i64) -> Result<Built> {
    let (s, r) = (p * q, a * b);
    let dp = |j| delta(p, q, j);
    let da = |j| delta(a, b, j);
    let f = &(&(&mono(6 * s - 10 * r, s - 3 * r) * &dp(2)) / &da(2))
        - &(&(&mono(-2 * s - 2 * r, -s - r) * &dp(0)) / &da(0));
    let fi = inv("f", &f)?;
    let ahead = &(&(&mono(10 * s - 16 * r, s - 2 * r) * &dp(4)) * &da(2)) / &da(4);
    let ahead = &ahead + &(&mono(10 * s, s) * &dp(4));
    let here = &(&(&mono(6 * s - 8 * r, s - 2 * r) * &dp(2)) * &da(0)) / &da(2);
    let here = &here + &(&mono(6 * s, s) * &dp(2));
    let g = &(&(&mono(-2 * r, -r) * &da(0)) + &(&fi.shift_m(2) * &ahead))
        - &(&(&mono(-4 * r, -2 * r) * &fi) * &here);
    let gi = inv("g", &(&quantum_difference() * &g))?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(gi),
        binomial(2, Rf::one(), -&mono(-4 * r, -2 * r)),
        scalar(fi),
        binomial(2, Rf::one(), -&mono(-4 * s, -2 * s)),
        scalar(&mono(4 * s + 2 * r, 2 * s + r) / &da(0)),
        binomial(2, br(2), -&(&mono(-4 * s - 4 * r, -2 * s - 2 * r) * &br(0))),
    ]);
    Ok(Built { operator, aux: vec![("f", f), ("g", g)] })
}

fn c4(p: i64, q: i64) -> Result<Built> {
    let s = p * q;
    let (d0, d2) = (delta(p, q, 0), delta(p, q, 2));
    let f = &(&mono(-2 * s, -s) * &d0) + &(&mono(6 * s, s) * &d2);
    let fi = inv("f", &(&quantum_difference() * &f))?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(fi),
        binomial(2, Rf::one(), -&mono(-4 * s, -2 * s)),
        scalar(&mono(6 * s, 3 * s) / &d0),
        binomial(2, br(2), -&(&mono(-8 * s, -4 * s) * &br(0))),
    ]);
    Ok(Built { operator, aux: vec![("f", f)] })
}

fn c5(p: i64, q: i64, a: i64, b: i64) -> Result<Built> {
    let r = a * b;
    let dp = |j| delta(p, q, j);
    let da = |j| delta(a, b, j);
    let qd = quantum_difference();
    let qd2 = &qd * &qd;
    let phi = &qd2 * &(&(&dp(2) * &da(0)) - &(&dp(0) * &da(2)));
    let psi = &(&qd2 * &mono(4 * r, 2 * r)) * &(&da(2) * &da(0));
    let f = &mono(-4 * r, -2 * r) * &(&(&dp(2) / &da(2)) - &(&dp(0) / &da(0)));
    let fi = inv("f", &f)?;
    let ahead = &(&(&mono(-6 * r, -r) * &dp(4)) * &da(2)) / &da(4);
    let ahead = &ahead + &(&mono(10 * r, r) * &dp(4));
    let here = &(&(&mono(-2 * r, -r) * &dp(2)) * &da(0)) / &da(2);
    let here = &here + &(&mono(6 * r, r) * &dp(2));
    let g = &(&(&mono(-2 * r, -r) * &da(0)) + &(&fi.shift_m(2) * &ahead))
        - &(&(&mono(-4 * r, -2 * r) * &fi) * &here);
    let gi = inv("g", &(&qd * &g))?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(gi),
        binomial(2, Rf::one(), -&mono(-4 * r, -2 * r)),
        scalar(fi),
        binomial(2, Rf::one(), -&mono(-4 * r, -2 * r)),
        scalar(&mono(6 * r, 3 * r) / &da(0)),
        binomial(2, br(2), -&(&mono(-8 * r, -4 * r) * &br(0))),
    ]);
    nonzero("phi", &phi)?;
    Ok(Built { operator, aux: vec![("f", f), ("g", g), ("phi", phi), ("psi", psi)] })
}

/// `M^{-5a+2} t^{e_hi+k_hi} - M^{-5a-2} t^{e_hi-k_hi} - M^{-7a+2} t^{e_lo+k_lo}
/// + M^{-7a-2} t^{e_lo-k_lo}`.
fn c7_band(a: i64, e_hi: i64, k_hi: i64, e_lo: i64, k_lo: i64) -> Rf {
    let m = |et: i64, em: i64, c: i64| Rf::monomial(et, em, c);
    let terms = [
        m(e_hi + k_hi, -5 * a + 2, 1),
        m(e_hi - k_hi, -5 * a - 2, -1),
        m(e_lo + k_lo, -7 * a + 2, -1),
        m(e_lo - k_lo, -7 * a - 2, 1),
    ];
    terms.iter().fold(Rf::zero(), |acc, x| &acc + x)
}

/// `M^{p+q} t^{k(p+q)+2} + M^{-p-q} t^{-k(p+q)+2} - M^{q-p} t^{k(q-p)-2}
/// - M^{p-q} t^{-k(q-p)-2}`.
fn c7_delta_band(p: i64, q: i64, k: i64) -> Rf {
    let m = |et: i64, em: i64, c: i64| Rf::monomial(et, em, c);
    let terms = [
        m(k * (p + q) + 2, p + q, 1),
        m(-k * (p + q) + 2, -p - q, 1),
        m(k * (q - p) - 2, q - p, -1),
        m(-k * (q - p) - 2, p - q, -1),
    ];
    terms.iter().fold(Rf::zero(), |acc, x| &acc + x)
}

fn c6(p: i64, q: i64, a: i64) -> Result<Built> {
    let s = p * q;
    let dp = |j| delta(p, q, j);
    let f =
        &(&mono(-4 * s - 2 * a, -2 * s - a) * &br2(3)) - &(&mono(-4 * s - 6 * a, -2 * s - 3 * a) * &br2(1));
    let fi = inv("f", &f)?;
    let fi2 = fi.shift_m(2);
    let g = &(&(&fi2 * &mono(-6 * s - 32 * a, -s - 8 * a)) * &dp(2))
        - &(&(&mono(-6 * s - 8 * a, -3 * s - 4 * a) * &fi) * &dp(0));
    let gi = inv("g", &g)?;
    let b0 = {
        let t1 = &mono(-2 * s, -s) * &dp(0);
        let t2 = &(&(&fi2 * &mono(-6 * s - 30 * a, -s - 7 * a)) * &dp(2)) * &br2(1);
        let t3 = &(&(&fi2 * &mono(-6 * s - 26 * a, -s - 5 * a)) * &dp(2)) * &br2(3);
        let t4 = &(&fi2
            * &(&(&mono(-6 * s - 6 * a, -s - a) * &br2(7))
                - &(&mono(-6 * s - 18 * a, -s - 3 * a) * &br2(5))))
            * &dp(2);
        let t5 = &(&(&mono(-4 * s, -2 * s) * &fi)
            * &(&(&mono(-2 * s - 2 * a, -s - a) * &br2(3)) - &(&mono(-2 * s - 6 * a, -s - 3 * a) * &br2(1))))
            * &dp(0);
        &(&(&(&t1 - &t2) + &t3) + &t4) - &t5
    };
    let h = &(&(&mono(0, -a) * &br2(1)) + &(&gi.shift_m(1) * &b0.shift_m(1)))
        + &(&(&mono(-2 * a, -2 * a) * &gi) * &b0);
    let hi = inv("h", &(&quantum_difference() * &h))?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(hi),
        binomial(1, Rf::one(), mono(-2 * a, -2 * a)),
        scalar(gi),
        binomial(2, Rf::one(), -&mono(-4 * s, -2 * s)),
        scalar(fi),
        binomial(2, br(2), -&(&mono(-4 * s - 8 * a, -2 * s - 4 * a) * &br(0))),
    ]);
    let mut aux = vec![("f", f), ("g", g), ("h", h)];
    if s == 2 * a {
        let f1 = c7_band(a, -10 * a, 6, -14 * a, 2);
        let f3 = c7_band(a, -30 * a, 14, -42 * a, 10);
        let phi = &(&(&mono(-44 * a, -10 * a) * &c7_delta_band(p, q, 6)) * &f1)
            - &(&(&mono(-20 * a, -10 * a) * &c7_delta_band(p, q, 2)) * &f3);
        let psi = &f3 * &f1;
        nonzero("phi", &phi)?;
        aux.push(("phi", phi));
        aux.push(("psi", psi));
    }
    Ok(Built { operator, aux })
}

fn c8(p: i64, a: i64) -> Result<Built> {
    let den = &mono(-2 * a, -p - a) - &mono(4 * p - 6 * a, p - 3 * a);
    let den2 = &mono(-2 * p - 4 * a, -p - a) - &mono(6 * p - 12 * a, p - 3 * a);
    let g = &(&(&mono(0, -a) * &br2(1))
        + &(&(&(&mono(6 * p - 8 * a, p - 2 * a) * &br2(3)) - &(&mono(6 * p, p) * &br2(5))) / &den2))
        + &(&(&(&mono(4 * p - 6 * a, p - 4 * a) * &br2(1)) - &(&mono(4 * p - 2 * a, p - 2 * a) * &br2(3)))
            / &den);
    let gi = inv("g", &(&quantum_difference() * &g))?;
    let di = inv("divisor", &den)?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(gi),
        binomial(1, Rf::one(), mono(-2 * a, -2 * a)),
        scalar(di),
        binomial(1, Rf::one(), mono(-2 * p, -2 * p)),
        scalar(&mono(2 * p, 2 * p + a) / &br2(1)),
        binomial(1, br(1), -&(&mono(-2 * p - 2 * a, -2 * (p + a)) * &br(0))),
    ]);
    Ok(Built { operator, aux: vec![("g", g), ("divisor", den)] })
}

fn c9(p: i64) -> Result<Built> {
    let g = &(&mono(0, -p) * &br2(1)) - &(&mono(4 * p, p) * &br2(3));
    let gi = inv("g", &(&quantum_difference() * &g))?;
    let operator = chain(vec![
        l_minus_one(),
        scalar(gi),
        binomial(1, Rf::one(), mono(-2 * p, -2 * p)),
        scalar(&mono(2 * p, 3 * p) / &br2(1)),
        binomial(1, br(1), -&(&mono(-4 * p, -4 * p) * &br(0))),
    ]);
    Ok(Built { operator, aux: vec![("g", g)] })
}

/// Builds the candidate operator of `case` for `T(p,q) # T(a,b)`.
pub fn build_candidate(case: CaseId, k1: TorusKnotParam, k2: TorusKnotParam) -> Result<CandidateAnnihilator> {
    let (actual, params) = classify(k1, k2)?;
    if actual != case {
        return Err(Error::CaseMismatch(format!("{case}: {k1}#{k2} belongs to {actual}")));
    }
    let CaseParams { p, q, a, b } = params;
    let built = match case {
        CaseId::C3 => c3(p, q, a, b),
        CaseId::C4 => c4(p, q),
        CaseId::C5 => c5(p, q, a, b),
        CaseId::C6 | CaseId::C7 => c6(p, q, a),
        CaseId::C8 => c8(p, a),
        CaseId::C9 => c9(p),
    }?;
    let expected_l_degree = case.expected_l_degree();
    let aux: BTreeMap<String, Rf> = built.aux.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    for (name, v) in &aux {
        nonzero(name, v)?;
    }
    Ok(CandidateAnnihilator { case, params, operator: built.operator, aux, expected_l_degree })
}

/// The ratio whose limit at `t = -1` must be one for the operator to keep
/// its shape at `t = -1`: `f(t, t^4 M) / f(t, M)` in the pattern `C5` and
/// `g(t, t^2 M) / g(t, M)` in the pattern `C7`.
pub fn ratio_limit_witness(c: &CandidateAnnihilator) -> Option<Rf> {
    match c.case {
        CaseId::C5 => {
            let f = &c.aux["f"];
            Some(&f.shift_m(2) / f)
        }
        CaseId::C7 => {
            let g = &c.aux["g"];
            Some(&g.shift_m(1) / g)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{limit_at_t_minus1, Limit};

    fn tk(p: i64, q: i64) -> TorusKnotParam {
        TorusKnotParam::new(p, q).unwrap()
    }

    #[test]
    fn degrees_of_small_cases() {
        let c = build_candidate(CaseId::C9, tk(3, 2), tk(3, 2)).unwrap();
        assert_eq!(c.operator.l_degree().unwrap(), (0, 3));
        let c = build_candidate(CaseId::C8, tk(3, 2), tk(5, 2)).unwrap();
        assert_eq!(c.operator.l_degree().unwrap(), (0, 4));
        let c = build_candidate(CaseId::C4, tk(5, 3), tk(5, 3)).unwrap();
        assert_eq!(c.operator.l_degree().unwrap(), (0, 5));
    }

    #[test]
    fn wrong_case_is_rejected() {
        assert!(matches!(build_candidate(CaseId::C8, tk(3, 2), tk(3, 2)), Err(Error::CaseMismatch(_))));
        assert!(matches!(build_candidate(CaseId::C8, tk(3, 2), tk(-5, 2)), Err(Error::OppositeSigns(..))));
    }

    #[test]
    fn c7_g_matches_its_fraction_form() {
        let c = build_candidate(CaseId::C7, tk(6, 5), tk(15, 2)).unwrap();
        assert_eq!(&c.aux["phi"] / &c.aux["psi"], c.aux["g"]);
        let ratio = ratio_limit_witness(&c).unwrap();
        assert_eq!(limit_at_t_minus1(&ratio), Limit::Value(Rf::one()));
    }
}
