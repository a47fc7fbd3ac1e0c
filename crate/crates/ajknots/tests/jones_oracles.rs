//! Colored Jones values against an independent closed-form sum, and the
//! degree and divisibility invariants on random torus knots.

use ajknots::algebra::UnivariateLaurent;
use ajknots::apoly::{apoly_of, apoly_sum_lemma};
use ajknots::jones::{bracket, degree_bounds, jones_connected_sum, jones_torus, KnotExpr, TorusKnotParam};
use num_integer::Integer;
use proptest::prelude::*;

/// `J_{T(p,q)}(n)` as a finite sum over `j = -(n-1), -(n-3), ..., n-1`:
///
/// `t^{-pq(n^2-1)} Σ_j (t^{pq j^2 - 2(p+q) j + 2} - t^{pq j^2 - 2(p-q) j - 2}) / (t^2 - t^{-2})`.
fn closed_form_sum(p: i64, q: i64, n: i64) -> UnivariateLaurent {
    let pq = p * q;
    let mut terms = Vec::new();
    for j in (-(n - 1)..=n - 1).step_by(2) {
        terms.push((pq * j * j - 2 * (p + q) * j + 2, 1));
        terms.push((pq * j * j - 2 * (p - q) * j - 2, -1));
    }
    let num = UnivariateLaurent::from_int_terms(terms).mul_t_power(-pq * (n * n - 1));
    num.div_exact(&UnivariateLaurent::from_int_terms([(2, 1), (-2, -1)])).expect("exact division")
}

fn torus_knot() -> impl Strategy<Value = TorusKnotParam> {
    (2i64..=5, 3i64..=13, any::<bool>()).prop_filter_map("coprime with |p| > q", |(q, p, neg)| {
        let p = if neg { -p } else { p };
        (p.abs() > q && p.abs().gcd(&q) == 1).then(|| TorusKnotParam::new(p, q).unwrap())
    })
}

#[test]
fn recurrence_agrees_with_closed_form_sum() {
    for (p, q) in [(3, 2), (5, 2), (-5, 2), (-3, 2), (5, 3), (-5, 3), (7, 4), (12, 5), (20, 3)] {
        let k = TorusKnotParam::new(p, q).unwrap();
        for n in 1..=7 {
            assert_eq!(jones_torus(k, n), closed_form_sum(p, q, n), "T({p},{q}) at n = {n}");
        }
    }
}

#[test]
fn trefoil_values() {
    // Hand expansion of the q = 2 recurrence.
    let k = TorusKnotParam::new(3, 2).unwrap();
    let j2 = UnivariateLaurent::from_int_terms([(-2, 1), (-6, 1), (-10, 1), (-18, -1)]);
    assert_eq!(jones_torus(k, 2), j2);
    assert!(jones_torus(k, 1).is_one());
    assert!(jones_torus(k, 0).is_zero());
    assert_eq!(jones_torus(k, -2), -&j2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_form_on_random_knots(k in torus_knot(), n in 1i64..=6) {
        prop_assert_eq!(jones_torus(k, n), closed_form_sum(k.p, k.q, n));
    }

    #[test]
    fn torus_degrees_follow_the_formulas(k in torus_knot(), n in 1i64..=7) {
        let j = jones_torus(k, n);
        let got = (j.lowest_degree().unwrap(), j.highest_degree().unwrap());
        prop_assert_eq!(got, degree_bounds(&KnotExpr::Torus(k), n).unwrap());
    }

    #[test]
    fn bracket_divides_products(a in torus_knot(), b in torus_knot(), n in 1i64..=6) {
        let sum = jones_connected_sum(a, b, n).unwrap();
        prop_assert_eq!(&sum * &bracket(n), &jones_torus(a, n) * &jones_torus(b, n));
    }

    #[test]
    fn sum_degrees_add(a in torus_knot(), b in torus_knot(), n in 1i64..=5) {
        let v = &jones_connected_sum(a, b, n).unwrap() * &bracket(n);
        let got = (v.lowest_degree().unwrap(), v.highest_degree().unwrap());
        prop_assert_eq!(got, degree_bounds(&KnotExpr::Sum(a, b), n).unwrap());
    }

    #[test]
    fn apoly_product_rule_matches_closed_forms(a in torus_knot(), b in torus_knot()) {
        let (_, lemma) = apoly_sum_lemma(a, b);
        prop_assert!(apoly_of(&KnotExpr::Sum(a, b)).equivalent(&lemma));
        // The sum is symmetric in its summands.
        prop_assert!(apoly_of(&KnotExpr::Sum(b, a)).equivalent(&lemma));
    }
}
