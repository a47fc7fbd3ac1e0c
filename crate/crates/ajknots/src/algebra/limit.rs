//! Limits of rational functions as `t -> -1`.
//!
//! The numerator and denominator are viewed as polynomials in `t` over
//! `Z[M]`. While both vanish at `t = -1` they are divided by `t + 1`; the
//! vanishing orders are found by exact division, never numerically.

use serde::{Deserialize, Serialize};

use super::ratfunc::RationalFunction;
use super::zpoly::ZPoly;

/// Outcome of [`limit_at_t_minus1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    /// A finite limit, a rational function of `M` alone.
    Value(RationalFunction),
    /// The denominator vanishes at `t = -1` to higher order than the
    /// numerator; `order` is the difference of the two orders.
    Pole { order: u32 },
}

/// Serializable summary of a limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitSummary {
    Value(String),
    Pole(u32),
}

impl Limit {
    pub fn value(&self) -> Option<&RationalFunction> {
        match self {
            Limit::Value(v) => Some(v),
            Limit::Pole { .. } => None,
        }
    }

    pub fn summary(&self) -> LimitSummary {
        match self {
            Limit::Value(v) => LimitSummary::Value(v.to_string()),
            Limit::Pole { order } => LimitSummary::Pole(*order),
        }
    }
}

fn t_plus_one() -> ZPoly {
    ZPoly::from_terms([((0, 0), 1.into()), ((1, 0), 1.into())])
}

/// Vanishing order at `t = -1` and the cofactor with that factor removed.
fn strip_t_plus_one(p: &ZPoly) -> (u32, ZPoly, ZPoly) {
    let d = t_plus_one();
    let mut q = p.clone();
    let mut order = 0;
    loop {
        let v = q.at_t_minus_one();
        if !v.is_zero() {
            return (order, q, v);
        }
        q = q.div_exact(&d).expect("t + 1 divides a polynomial vanishing at t = -1");
        order += 1;
    }
}

/// The limit of `x` as `t -> -1`.
pub fn limit_at_t_minus1(x: &RationalFunction) -> Limit {
    if x.is_zero() {
        return Limit::Value(RationalFunction::zero());
    }
    let (scale, (a, b), num, den) = x.parts();
    let (on, _, nv) = strip_t_plus_one(num);
    let (od, _, dv) = strip_t_plus_one(den);
    if on < od {
        return Limit::Pole { order: od - on };
    }
    if on > od {
        return Limit::Value(RationalFunction::zero());
    }
    let sign = if a.rem_euclid(2) == 1 { -1 } else { 1 };
    let base = RationalFunction::from_zpolys(&nv, &dv).expect("nonzero denominator");
    Limit::Value(
        base.scale_by(&(scale * num_rational::BigRational::from_integer(sign.into()))).mul_monomial(0, b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_rational;

    #[test]
    fn removable_singularity() {
        let x = parse_rational("(t^2 - 1)/(t + 1)").unwrap();
        assert_eq!(limit_at_t_minus1(&x), Limit::Value(RationalFunction::from_int(-2)));
    }

    #[test]
    fn plain_substitution() {
        let x = parse_rational("M*t^3").unwrap();
        assert_eq!(limit_at_t_minus1(&x), Limit::Value(RationalFunction::monomial(0, 1, -1)));
    }

    #[test]
    fn pole_is_reported() {
        let x = parse_rational("M/(t + 1)").unwrap();
        assert_eq!(limit_at_t_minus1(&x), Limit::Pole { order: 1 });
    }
}
