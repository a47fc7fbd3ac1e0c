//! Minimality certificates: the linear systems whose only solution is
//! zero when an annihilator of smaller `L`-degree is assumed.
//!
//! Each case reduces such an assumed operator `D_{d-1} L^{d-1} + … + D_0`
//! to homogeneous linear systems in the `D_i`. The systems are rebuilt
//! here from the parameters, their determinants are computed exactly and
//! compared with closed forms, and a zero determinant makes the
//! certificate fail.

use serde::{Deserialize, Serialize};

use super::cases::{br, br2, delta, mono};
use super::{CaseId, CaseParams};
use crate::algebra::text::format_rational;
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::jones::quantum_difference;
use crate::linalg::determinant;

type Rf = RationalFunction;

/// One determinant or coefficient in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub label: String,
    /// Number of unknowns of the system, one for a single coefficient.
    pub size: usize,
    pub value: String,
    pub nonzero: bool,
    /// The closed form the value is compared with, if there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    /// Agreement with `expected`, allowing an overall sign.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

/// All entries for one knot. The verdict holds when every entry is
/// nonzero and every closed form agrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub case: CaseId,
    pub params: CaseParams,
    pub entries: Vec<CertificateEntry>,
    pub verdict: bool,
}

/// `M^e`.
fn mm(e: i64) -> Rf {
    Rf::monomial(0, e, 1)
}

/// `Σ c M^e`.
fn msum(terms: &[(i64, i64)]) -> Rf {
    terms.iter().fold(Rf::zero(), |acc, &(c, e)| &acc + &Rf::monomial(0, e, c))
}

fn add(xs: &[&Rf]) -> Rf {
    xs.iter().fold(Rf::zero(), |acc, x| &acc + *x)
}

fn equal_up_to_sign(x: &Rf, y: &Rf) -> bool {
    x == y || *x == -y
}

fn entry(label: &str, size: usize, value: &Rf, expected: Option<&Rf>) -> CertificateEntry {
    CertificateEntry {
        label: label.to_string(),
        size,
        value: format_rational(value),
        nonzero: !value.is_zero(),
        expected: expected.map(format_rational),
        agrees: expected.map(|e| equal_up_to_sign(value, e)),
    }
}

fn det_entry(label: &str, m: Vec<Vec<Rf>>, expected: Option<&Rf>) -> Result<CertificateEntry> {
    let d = determinant(&m)?;
    Ok(entry(label, m.len(), &d, expected))
}

/// A check of an integer identity, such as a degree formula.
fn int_entry(label: &str, got: i64, expected: i64) -> CertificateEntry {
    CertificateEntry {
        label: label.to_string(),
        size: 1,
        value: got.to_string(),
        nonzero: true,
        expected: Some(expected.to_string()),
        agrees: Some(got == expected),
    }
}

/// Lowest and highest `t`-degree of a Laurent polynomial in `t` and `M`
/// after substituting `M = t^{2n}`.
fn degree_span_at(x: &Rf, n: i64) -> Result<(i64, i64)> {
    let v = x.eval_m(n)?;
    let l =
        v.as_laurent().ok_or_else(|| Error::InvalidParams("expected a Laurent polynomial".to_string()))?;
    Ok((l.lowest_degree()?, l.highest_degree()?))
}

/// Colors at which degree formulas are checked.
const DEGREE_COLORS: std::ops::RangeInclusive<i64> = 1..=5;

fn c3(p: i64, q: i64, a: i64, b: i64) -> Result<Vec<CertificateEntry>> {
    let (s, r) = (p * q, a * b);
    let u = mm(-2 * s);
    let v = mm(-2 * r);
    let x = mm(-2 * s - 2 * r);
    let (o, z) = (Rf::one(), Rf::zero());
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let u2v = &(&u * &u) * &v;
    let uv2 = &(&u * &v) * &v;
    let u2 = &u * &u;
    let v2 = &v * &v;
    let e4_6 = add(&[&x2, &u2v, &u2]);
    let e6_6 = add(&[&x2, &uv2, &v2]);
    let e7_6 = add(&[&x2, &u2v, &u2, &uv2, &v2, &x, &u, &v, &o]);
    let xu = &x + &u;
    let xv = &x + &v;
    let xuv1 = add(&[&x, &u, &v, &o]);
    // Columns D0..D6.
    let full = vec![
        vec![z.clone(), o.clone(), z.clone(), x.clone(), z.clone(), x2.clone(), z.clone()],
        vec![o.clone(), z.clone(), x.clone(), z.clone(), x2.clone(), z.clone(), x3.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), xu.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), xu.clone(), z.clone(), e4_6.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), xv.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), xv.clone(), z.clone(), e6_6.clone()],
        vec![z.clone(), z.clone(), o.clone(), o.clone(), xuv1.clone(), xuv1.clone(), e7_6.clone()],
    ];
    let odd = vec![vec![xu.clone(), o.clone()], vec![xv.clone(), o.clone()]];
    let even = vec![
        vec![o.clone(), x.clone(), x2.clone(), x3.clone()],
        vec![z.clone(), o.clone(), xu, e4_6],
        vec![z.clone(), o.clone(), xv, e6_6],
        vec![z, o.clone(), xuv1, e7_6],
    ];
    let u_minus_v = &u - &v;
    let even_expected = &u_minus_v * &(&(&u * &v) - &o);
    Ok(vec![
        det_entry("D5, D3 system", odd, Some(&u_minus_v))?,
        det_entry("D0, D2, D4, D6 system", even, Some(&even_expected))?,
        det_entry("full system", full, None)?,
    ])
}

fn c4(p: i64, q: i64) -> Result<Vec<CertificateEntry>> {
    let u = mm(-2 * p * q);
    let (o, z) = (Rf::one(), Rf::zero());
    let u2 = &u * &u;
    let u4 = &u2 * &u2;
    // Columns D0..D4.
    let m = vec![
        vec![z.clone(), o.clone(), z.clone(), u2.clone(), z.clone()],
        vec![o.clone(), z.clone(), u2.clone(), z.clone(), u4],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), &u2 + &u],
        vec![z.clone(), z.clone(), o.clone(), o.clone(), add(&[&u2, &u, &u, &o])],
    ];
    Ok(vec![det_entry("full system", m, None)?])
}

fn c5(p: i64, q: i64, a: i64, b: i64) -> Result<Vec<CertificateEntry>> {
    let r = a * b;
    let dp = |j| delta(p, q, j);
    let da = |j| delta(a, b, j);
    let den = &br(5) * &br(3);

    // The system in D5 and D3.
    let mixed = |x: &dyn Fn(i64) -> Rf, y: &dyn Fn(i64) -> Rf| {
        let bracket = &(&mono(-44 * r, -7 * r) * &x(1)) + &(&mono(-32 * r, -5 * r) * &x(3));
        &(&bracket * &mono(-12 * r, -3 * r)) * &y(1)
    };
    let det1 = (&mixed(&da, &dp) - &mixed(&dp, &da)).div(&den)?;
    let det1_closed = (&mono(-44 * r, -8 * r) * &(&(&da(3) * &dp(1)) - &(&dp(3) * &da(1)))).div(&den)?;

    // The system in D6 and D4.
    let p6 = add(&[
        &(&mono(-70 * r, -11 * r) * &da(0)),
        &(&mono(-62 * r, -9 * r) * &da(2)),
        &(&mono(-46 * r, -7 * r) * &da(4)),
    ]);
    let p4 = &(&mono(-30 * r, -7 * r) * &da(0)) + &(&mono(-22 * r, -5 * r) * &da(2));
    let tail = &mono(-6 * r, -3 * r) * &da(0);
    let a6 = &p6.div(&br(6))? - &(&tail * &msum(&[(1, -8 * r), (1, -6 * r), (1, -4 * r)])).div(&br(2))?;
    let a4 = &p4.div(&br(4))? - &(&tail * &msum(&[(1, -4 * r), (1, -2 * r)])).div(&br(2))?;
    let b6 = msum(&[(1, -6 * r), (2, -4 * r), (2, -2 * r), (1, 0)]);
    let b4 = msum(&[(1, -2 * r), (1, 0)]);
    let w = msum(&[(1, -8 * r), (2, -6 * r), (2, -4 * r), (1, -2 * r)]);
    let det2_closed =
        add(&[&(&p6 * &b4).div(&br(6))?, &-&(&p4 * &b6).div(&br(4))?, &(&tail * &w).div(&br(2))?]);
    let qd3 = quantum_difference().pow(3)?;
    let phi = &qd3
        * &add(&[
            &(&(&br(4) * &br(2)) * &(&p6 * &b4)),
            &-&(&(&br(6) * &br(2)) * &(&p4 * &b6)),
            &(&(&br(6) * &br(4)) * &(&tail * &w)),
        ]);
    let psi = &qd3 * &(&(&br(6) * &br(4)) * &br(2));
    let det2_quot = phi.div(&psi)?;

    let mut out = vec![
        entry("D5, D3 system", 2, &det1, Some(&det1_closed)),
        det_entry("D6, D4 system", vec![vec![a6, a4], vec![b6, b4]], Some(&det2_closed))?,
        entry("D6, D4 system as phi/psi", 2, &det2_quot, Some(&det2_closed)),
    ];
    let ab = a * b;
    for n in DEGREE_COLORS {
        let (lo, hi) = degree_span_at(&phi, n)?;
        if a > 0 {
            let f = -(4 + 26 * ab + 2 * a + 2 * b) * n - 10 - 70 * ab - 2 * a - 2 * b;
            out.push(int_entry(&format!("lowest degree of phi at n = {n}"), lo, f));
        } else {
            let f = -(4 + 26 * ab + 2 * a - 2 * b) * n - 14 - 70 * ab - 2 * a + 2 * b;
            out.push(int_entry(&format!("highest degree of phi at n = {n}"), hi, f));
        }
    }
    Ok(out)
}

fn c6(p: i64, q: i64, a: i64) -> Result<Vec<CertificateEntry>> {
    let s = p * q;
    let (o, z) = (Rf::one(), Rf::zero());
    let c = msum(&[(1, -2 * s - 4 * a), (1, -2 * s)]);
    let r5 = [
        msum(&[(-1, -2 * s - 6 * a), (-1, -6 * a)]),
        msum(&[(1, -2 * s - 4 * a), (1, -4 * a)]),
        msum(&[(-1, -2 * a)]),
    ];
    let r6 = [
        msum(&[
            (1, -3 * s - 9 * a),
            (1, -s - 9 * a),
            (1, -3 * s - 5 * a),
            (-1, -3 * s - 7 * a),
            (1, -3 * s - a),
            (-1, -3 * s - 3 * a),
            (-1, -s - 7 * a),
            (1, -s - 5 * a),
            (1, -s - a),
            (-1, -s - 3 * a),
        ]),
        msum(&[
            (1, -3 * s - 5 * a),
            (-1, -3 * s - 7 * a),
            (1, -3 * s - a),
            (-1, -3 * s - 3 * a),
            (-1, -s - 7 * a),
            (1, -s - 5 * a),
            (1, -s - a),
            (-1, -s - 3 * a),
        ]),
        msum(&[(1, -s - 5 * a), (1, -s - a), (-1, -s - 3 * a)]),
        msum(&[(1, -s - a), (-1, -s - 3 * a)]),
    ];
    let m1 = mm(-4 * s - 8 * a);
    let m2 = mm(-2 * s - 4 * a);
    // Columns D0..D5.
    let full = vec![
        vec![z.clone(), o.clone(), z.clone(), m2.clone(), z.clone(), m1.clone()],
        vec![o.clone(), z.clone(), m2, z.clone(), m1, z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), c.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), c, z.clone()],
        vec![z.clone(), z.clone(), o.clone(), r5[2].clone(), r5[1].clone(), r5[0].clone()],
        vec![z.clone(), z, r6[3].clone(), r6[2].clone(), r6[1].clone(), r6[0].clone()],
    ];
    // The two equations left after eliminating D3 and D2, in D5 and D4.
    let reduced = vec![
        vec![msum(&[(-1, -6 * a), (1, -2 * s - 2 * a)]), msum(&[(1, -4 * a), (-1, -2 * s)])],
        vec![
            msum(&[
                (1, -s - 9 * a),
                (-1, -s - 7 * a),
                (1, -s - 5 * a),
                (-1, -s - 3 * a),
                (1, -s - a),
                (-1, -3 * s - 5 * a),
            ]),
            msum(&[(-1, -s - 7 * a), (1, -s - 5 * a), (1, -s - a), (-1, -s - 3 * a)]),
        ],
    ];
    let expected = &msum(&[(1, -4 * a), (-1, -2 * s)]) * &msum(&[(1, -3 * s - 5 * a), (-1, -s - a)]);
    Ok(vec![
        det_entry("D5, D4 system", reduced, Some(&expected))?,
        det_entry("full system", full, Some(&expected))?,
    ])
}

fn c7(a: i64) -> Result<Vec<CertificateEntry>> {
    let band = add(&[
        &(&mono(-36 * a, -6 * a) * &br2(9)),
        &-&(&mono(-52 * a, -8 * a) * &br2(7)),
        &(&mono(-64 * a, -10 * a) * &br2(5)),
        &-&(&mono(-72 * a, -12 * a) * &br2(3)),
    ]);
    let lower = &br2(5) - &(&mono(-8 * a, -2 * a) * &br2(3));
    let den = &br(5) * &lower;
    let head = msum(&[(-1, -10 * a), (-1, -6 * a)]);
    let numer = &(&head * &den) + &(&br(3) * &band);
    let coeff = numer.div(&den)?;
    let d4 = msum(&[(-1, -9 * a), (1, -7 * a), (1, -3 * a), (-1, -5 * a)]);
    let mut out = vec![entry("coefficient of D5", 1, &coeff, None), entry("coefficient of D4", 1, &d4, None)];
    let cleared = &numer * &quantum_difference().pow(2)?;
    for n in DEGREE_COLORS {
        let (lo, _) = degree_span_at(&cleared, n)?;
        out.push(int_entry(
            &format!("lowest degree of the D5 numerator at n = {n}"),
            lo,
            -24 * a * n - 6 * n - 72 * a - 12,
        ));
    }
    Ok(out)
}

fn c8(p: i64, a: i64) -> Result<Vec<CertificateEntry>> {
    let (o, z) = (Rf::one(), Rf::zero());
    let e2 = |x: i64, y: i64| {
        [
            msum(&[(-1, -4 * x - 4 * y), (1, -4 * x - 2 * y), (1, -4 * x)]),
            msum(&[(-1, -2 * x - 2 * y), (1, -2 * x)]),
        ]
    };
    let r2 = e2(p, a);
    let r1 = e2(a, p);
    let r0 = [
        msum(&[
            (1, -4 * p - 4 * a),
            (-1, -4 * p - 2 * a),
            (-1, -4 * a - 2 * p),
            (1, -2 * p - 2 * a),
            (1, -4 * p),
            (-1, -2 * p),
            (1, -4 * a),
            (-1, -2 * a),
            (1, 0),
        ]),
        msum(&[(1, -2 * p - 2 * a), (-1, -2 * p), (-1, -2 * a), (1, 0)]),
    ];
    // Columns D3, D2, D1.
    let three = vec![
        vec![r2[0].clone(), r2[1].clone(), o.clone()],
        vec![r1[0].clone(), r1[1].clone(), o.clone()],
        vec![r0[0].clone(), r0[1].clone(), o.clone()],
    ];
    let full = vec![
        vec![mm(-6 * (p + a)), mm(-4 * (p + a)), mm(-2 * (p + a)), o.clone()],
        vec![r2[0].clone(), r2[1].clone(), o.clone(), z.clone()],
        vec![r1[0].clone(), r1[1].clone(), o.clone(), z.clone()],
        vec![r0[0].clone(), r0[1].clone(), o, z],
    ];
    let expected = msum(&[
        (-2, -6 * p - 2 * a),
        (1, -4 * p - 2 * a),
        (2, -6 * p),
        (-2, -4 * p),
        (2, -2 * p - 6 * a),
        (-2, -6 * a),
        (2, -4 * a),
        (1, -2 * p),
        (-1, -2 * p - 4 * a),
        (-1, -2 * a),
    ]);
    Ok(vec![
        det_entry("D3, D2, D1 system", three, Some(&expected))?,
        det_entry("full system", full, Some(&expected))?,
    ])
}

fn c9(p: i64) -> Result<Vec<CertificateEntry>> {
    let (o, z) = (Rf::one(), Rf::zero());
    // Columns D2, D1, D0.
    let m = vec![
        vec![mm(-8 * p), mm(-4 * p), o.clone()],
        vec![msum(&[(-1, -4 * p), (1, -2 * p)]), o.clone(), z.clone()],
        vec![msum(&[(1, -4 * p), (-2, -2 * p), (1, 0)]), o, z],
    ];
    let expected = msum(&[(-2, -4 * p), (3, -2 * p), (-1, 0)]);
    Ok(vec![det_entry("full system", m, Some(&expected))?])
}

/// Builds the certificate of `case` for the given parameters.
///
/// The parameters are not checked against the case, so substituting a
/// boundary value (for instance `p = a` in [`CaseId::C8`]) exercises the
/// failure path. Fails with [`Error::CertificateFailure`] when an entry
/// vanishes or a closed form disagrees.
pub fn minimality_certificate(case: CaseId, params: CaseParams) -> Result<MinimalityCertificate> {
    let entries = certificate_entries(case, params)?;
    let bad: Vec<&CertificateEntry> =
        entries.iter().filter(|e| !e.nonzero || e.agrees == Some(false)).collect();
    if let Some(e) = bad.first() {
        let reason = if e.nonzero { "disagrees with its closed form" } else { "vanishes" };
        return Err(Error::CertificateFailure(format!("{case} {}: {} {reason}", e.label, e.value)));
    }
    Ok(MinimalityCertificate { case, params, entries, verdict: true })
}

/// The certificate entries of `case` at `params` without a verdict, so
/// that vanishing entries can be inspected.
pub fn certificate_entries(case: CaseId, params: CaseParams) -> Result<Vec<CertificateEntry>> {
    let CaseParams { p, q, a, b } = params;
    Ok(match case {
        CaseId::C3 => c3(p, q, a, b)?,
        CaseId::C4 => c4(p, q)?,
        CaseId::C5 => c5(p, q, a, b)?,
        CaseId::C6 => c6(p, q, a)?,
        CaseId::C7 => c7(a)?,
        CaseId::C8 => c8(p, a)?,
        CaseId::C9 => c9(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(p: i64, q: i64, a: i64, b: i64) -> CaseParams {
        CaseParams { p, q, a, b }
    }

    #[test]
    fn c9_determinant() {
        let c = minimality_certificate(CaseId::C9, cp(3, 2, 3, 2)).unwrap();
        assert_eq!(c.entries[0].agrees, Some(true));
    }

    #[test]
    fn c4_determinant_is_u_plus_one() {
        // Two pivots in D3, D1 and D0 leave (u+1)^2 - (u^2+u) = u+1.
        let d = determinant(&{
            let u = mm(-30);
            let (o, z) = (Rf::one(), Rf::zero());
            let u2 = &u * &u;
            vec![
                vec![z.clone(), o.clone(), z.clone(), u2.clone(), z.clone()],
                vec![o.clone(), z.clone(), u2.clone(), z.clone(), &u2 * &u2],
                vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone(), z.clone(), &u2 + &u],
                vec![z.clone(), z.clone(), o.clone(), o.clone(), add(&[&u2, &u, &u, &o])],
            ]
        })
        .unwrap();
        let expected = &mm(-30) + &Rf::one();
        assert!(equal_up_to_sign(&d, &expected));
        assert!(minimality_certificate(CaseId::C4, cp(5, 3, 5, 3)).is_ok());
    }

    #[test]
    fn c8_fails_when_p_equals_a() {
        assert!(minimality_certificate(CaseId::C8, cp(3, 2, 5, 2)).is_ok());
        assert!(matches!(
            minimality_certificate(CaseId::C8, cp(3, 2, 3, 2)),
            Err(Error::CertificateFailure(_))
        ));
    }
}
