//! Invariants of the skew product and of the action on sequences.

use ajknots::algebra::{RationalFunction, UnivariateLaurent, ZPoly};
use ajknots::jones::{JonesSequence, KnotExpr, TorusKnotParam};
use ajknots::torus::SkewOperator;
use num_bigint::BigInt;
use proptest::prelude::*;

type Rf = RationalFunction;

fn laurent_coeff() -> impl Strategy<Value = Rf> {
    prop::collection::vec(((-3i64..=3, -2i64..=2), -3i64..=3), 1..4).prop_map(|terms| {
        let z = ZPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))));
        Rf::from_zpolys(&z, &ZPoly::one()).unwrap()
    })
}

fn rational_coeff() -> impl Strategy<Value = Rf> {
    (laurent_coeff(), laurent_coeff()).prop_filter_map("nonzero denominator", |(a, b)| a.div(&b).ok())
}

/// Operators with Laurent-polynomial coefficients, so that they map
/// Laurent-valued sequences to Laurent-valued sequences.
fn polynomial_operator() -> impl Strategy<Value = SkewOperator> {
    prop::collection::vec((0i64..=2, laurent_coeff()), 1..3).prop_map(SkewOperator::from_terms)
}

fn operator() -> impl Strategy<Value = SkewOperator> {
    prop::collection::vec((-1i64..=2, rational_coeff()), 1..3).prop_map(SkewOperator::from_terms)
}

fn trefoil() -> JonesSequence {
    JonesSequence::new(KnotExpr::Torus(TorusKnotParam::new(3, 2).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn action_respects_products(a in polynomial_operator(), b in polynomial_operator(), n in 1i64..=5) {
        let seq = trefoil();
        let bs = |k: i64| -> UnivariateLaurent {
            b.apply(&seq, k).unwrap().as_laurent().expect("polynomial coefficients").clone()
        };
        let composed = (&a * &b).apply(&seq, n).unwrap();
        let nested = a.apply(&bs, n).unwrap();
        prop_assert_eq!(composed, nested);
    }

    #[test]
    fn normalize_ignores_left_scalars_and_shifts(a in operator(), c in rational_coeff(), k in -2i64..=2) {
        prop_assume!(!a.is_zero() && !c.is_zero());
        let base = a.normalize().unwrap();
        prop_assert_eq!(a.scale_left(&c).normalize().unwrap(), base.clone());
        prop_assert_eq!((&SkewOperator::l_power(k) * &a).normalize().unwrap(), base.clone());
        prop_assert_eq!(base.normalize().unwrap(), base);
    }

    #[test]
    fn monomial_inverse(c in rational_coeff(), k in -3i64..=3) {
        prop_assume!(!c.is_zero());
        let x = SkewOperator::from_terms([(k, c)]);
        let inv = x.invert_monomial().unwrap();
        prop_assert_eq!(&x * &inv, SkewOperator::one());
        prop_assert_eq!(&inv * &x, SkewOperator::one());
    }
}

#[test]
fn quantum_torus_relation() {
    let l = SkewOperator::l_power(1);
    let m = SkewOperator::m();
    let t2 = SkewOperator::scalar(Rf::monomial(2, 0, 1));
    assert_eq!(&l * &m, &(&t2 * &m) * &l);
}

#[test]
fn action_of_generators() {
    // (M s)(n) = t^{2n} s(n) and (L s)(n) = s(n + 1).
    let seq = trefoil();
    for n in 1..=6 {
        let m = SkewOperator::m().apply(&seq, n).unwrap();
        assert_eq!(m.as_laurent(), Some(&seq.value(n).mul_t_power(2 * n)));
        let l = SkewOperator::l_power(1).apply(&seq, n).unwrap();
        assert_eq!(l.as_laurent(), Some(&seq.value(n + 1)));
    }
}
