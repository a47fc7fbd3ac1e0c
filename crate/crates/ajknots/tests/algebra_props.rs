//! Invariants of the exact arithmetic, checked on random inputs.

use ajknots::algebra::text::format_rational;
use ajknots::algebra::{gcd, limit_at_t_minus1, parse_rational, Limit, RationalFunction, ZPoly};
use ajknots::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

type Rf = RationalFunction;

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(((-4i64..=4, -3i64..=3), -5i64..=5), 1..5)
        .prop_map(|terms| ZPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero_zpoly() -> impl Strategy<Value = ZPoly> {
    zpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = Rf> {
    (zpoly(), nonzero_zpoly()).prop_map(|(n, d)| Rf::from_zpolys(&n, &d).unwrap())
}

fn nonzero_rf() -> impl Strategy<Value = Rf> {
    rf().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_and_multiplication_are_commutative(a in rf(), b in rf()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(a in rf(), b in rf(), c in rf()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses(a in nonzero_rf()) {
        prop_assert!((&a * &a.invert().unwrap()).is_one());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a / &Rf::one(), a.clone());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_zpoly(), b in nonzero_zpoly(), c in nonzero_zpoly()) {
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        // The primitive part of the common factor c divides the gcd.
        let c = c.div_scalar_exact(&c.content());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn shift_then_evaluate(a in rf(), j in -3i64..=3, n in -4i64..=4) {
        match (a.shift_m(j).eval_m(n), a.eval_m(n + j)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(Error::DenominatorCollapse { .. }), Err(Error::DenominatorCollapse { .. })) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in rf(), b in rf(), n in 0i64..=4) {
        if let (Ok(x), Ok(y), Ok(xy)) = (a.eval_m(n), b.eval_m(n), (&a * &b).eval_m(n)) {
            let num = &x.num * &y.num;
            let den = &x.den * &y.den;
            // x y and the value of a b agree as fractions.
            prop_assert_eq!(&num * &xy.den, &xy.num * &den);
        }
    }

    #[test]
    fn text_round_trip(a in rf()) {
        prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
    }

    #[test]
    fn limit_is_multiplicative(a in rf(), b in rf()) {
        if let (Limit::Value(x), Limit::Value(y)) = (limit_at_t_minus1(&a), limit_at_t_minus1(&b)) {
            prop_assert_eq!(limit_at_t_minus1(&(&a * &b)), Limit::Value(&x * &y));
        }
    }

    #[test]
    fn limit_of_t_free_function_is_itself(n in zpoly(), d in nonzero_zpoly()) {
        // Drop the t-exponents so that the function depends on M alone.
        let strip = |p: &ZPoly| ZPoly::from_terms(p.terms().iter().map(|((_, m), c)| ((0, *m), c.clone())));
        let (n, d) = (strip(&n), strip(&d));
        prop_assume!(!d.is_zero());
        let x = Rf::from_zpolys(&n, &d).unwrap();
        prop_assert_eq!(limit_at_t_minus1(&x), Limit::Value(x));
    }
}

#[test]
fn limit_with_cancelling_orders() {
    // ((t + 1)^2 M) / ((t + 1)^2 (M + 1)) -> M / (M + 1).
    let t1 = ZPoly::from_terms([((1, 0), BigInt::from(1)), ((0, 0), BigInt::from(1))]);
    let sq = t1.mul(&t1);
    let m = ZPoly::monomial(0, 1, 1);
    let m1 = m.add(&ZPoly::one());
    let x = Rf::from_zpolys(&sq.mul(&m), &sq.mul(&m1)).unwrap();
    assert_eq!(limit_at_t_minus1(&x), Limit::Value(Rf::from_zpolys(&m, &m1).unwrap()));
    let pole = Rf::from_zpolys(&m, &sq).unwrap();
    assert_eq!(limit_at_t_minus1(&pole), Limit::Pole { order: 2 });
}
