//! End-to-end runs of the pipeline on parameter samples other than the
//! acceptance pairs, and its failure paths.

use ajknots::algebra::text::format_rational;
use ajknots::algebra::RationalFunction;
use ajknots::annihilator::{
    build_candidate, certificate_entries, check_annihilation, check_operator, classify, evaluate_and_compare,
    minimality_certificate, AJReport, CaseId, CaseParams, CollapsePolicy,
};
use ajknots::jones::{JonesSequence, TorusKnotParam};
use ajknots::torus::SkewOperator;
use ajknots::Error;

fn tk(p: i64, q: i64) -> TorusKnotParam {
    TorusKnotParam::new(p, q).unwrap()
}

fn run(case: CaseId, k1: TorusKnotParam, k2: TorusKnotParam, n_max: i64) -> AJReport {
    let (got, _) = classify(k1, k2).unwrap();
    assert_eq!(got, case, "{k1}#{k2}");
    let c = build_candidate(case, k1, k2).unwrap();
    let (lo, hi) = c.operator.l_degree().unwrap();
    assert_eq!(hi - lo, case.expected_l_degree());
    let a = check_annihilation(&c, 1..=n_max, CollapsePolicy::Fail).unwrap();
    assert!(a.ok, "{k1}#{k2}: {:?}", a.failure);
    let r = evaluate_and_compare(&c).unwrap();
    assert!(r.matches, "{k1}#{k2}: {} vs {}", r.squarefree_part, r.a_polynomial);
    assert_eq!(!r.repeated_factors.is_empty(), case.has_repeated_factor(), "{k1}#{k2}");
    minimality_certificate(case, c.params).unwrap();
    r
}

#[test]
fn classification_examples() {
    let case = |a: (i64, i64), b: (i64, i64)| classify(tk(a.0, a.1), tk(b.0, b.1)).map(|(c, _)| c);
    assert_eq!(case((5, 3), (4, 3)).unwrap(), CaseId::C3);
    assert_eq!(case((12, 5), (20, 3)).unwrap(), CaseId::C5);
    assert_eq!(case((6, 5), (15, 2)).unwrap(), CaseId::C7);
    // A knot with q = 2 is moved to the second slot.
    let (c, p) = classify(tk(7, 2), tk(5, 3)).unwrap();
    assert_eq!((c, p), (CaseId::C6, CaseParams { p: 5, q: 3, a: 7, b: 2 }));
    assert!(matches!(case((3, 2), (-5, 2)), Err(Error::OppositeSigns(..))));
}

#[test]
fn negative_same_sign_samples() {
    run(CaseId::C3, tk(-5, 3), tk(-4, 3), 6);
    run(CaseId::C4, tk(-4, 3), tk(-4, 3), 6);
    run(CaseId::C6, tk(-5, 3), tk(-3, 2), 6);
    run(CaseId::C8, tk(-3, 2), tk(-7, 2), 6);
    run(CaseId::C9, tk(-5, 2), tk(-5, 2), 6);
}

#[test]
fn positive_second_samples() {
    run(CaseId::C3, tk(7, 3), tk(5, 4), 5);
    run(CaseId::C6, tk(4, 3), tk(5, 2), 5);
    run(CaseId::C8, tk(5, 2), tk(7, 2), 6);
    run(CaseId::C9, tk(5, 2), tk(5, 2), 6);
}

#[test]
fn repeated_factor_samples() {
    let r = run(CaseId::C7, tk(10, 3), tk(15, 2), 5);
    assert_eq!(r.repeated_factors, vec!["L + M^-30".to_string()]);
    let r = run(CaseId::C5, tk(10, 3), tk(6, 5), 5);
    assert_eq!(r.repeated_factors, vec!["L^2 - M^-60".to_string()]);
}

#[test]
fn corrupted_operator_fails_with_witness() {
    let c = build_candidate(CaseId::C9, tk(3, 2), tk(3, 2)).unwrap();
    let bump = SkewOperator::from_terms([(1, RationalFunction::monomial(0, 1, 1))]);
    let broken = &c.operator + &bump;
    let seq = JonesSequence::new(c.params.knot());
    let r = check_operator(&broken, &seq, 1..=6, CollapsePolicy::Fail).unwrap();
    assert!(!r.ok);
    let (n, residual) = r.failure.unwrap();
    assert_eq!(n, 1);
    assert!(!residual.is_empty());
    // The intact operator passes on the same range.
    assert!(check_operator(&c.operator, &seq, 1..=6, CollapsePolicy::Fail).unwrap().ok);
}

#[test]
fn c3_even_determinant_at_sample() {
    // (M^-30 - M^-24)(M^-54 - 1) at (p, q, a, b) = (5, 3, 4, 3).
    let m = |e| RationalFunction::monomial(0, e, 1);
    let want = &(&m(-30) - &m(-24)) * &(&m(-54) - &RationalFunction::one());
    let entries = certificate_entries(CaseId::C3, CaseParams { p: 5, q: 3, a: 4, b: 3 }).unwrap();
    let e = entries.iter().find(|e| e.label == "D0, D2, D4, D6 system").unwrap();
    assert!(e.value == format_rational(&want) || e.value == format_rational(&-&want), "{}", e.value);
}

#[test]
fn report_json_round_trip() {
    let c = build_candidate(CaseId::C9, tk(3, 2), tk(3, 2)).unwrap();
    let mut r = evaluate_and_compare(&c).unwrap();
    r.annihilation = Some(check_annihilation(&c, 1..=4, CollapsePolicy::Fail).unwrap());
    r.certificates = Some(minimality_certificate(CaseId::C9, c.params).unwrap());
    let text = serde_json::to_string(&r).unwrap();
    let back: AJReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
