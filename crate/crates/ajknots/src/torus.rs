//! The extended quantum torus: Laurent polynomials in `L` with
//! coefficients in `Q(t, M)` and the twisted product
//! `f L^j · g L^k = f · g(t, t^{2j} M) · L^{j+k}`.
//!
//! Operators act on sequences from the left through `(M s)(n) = t^{2n} s(n)`
//! and `(L s)(n) = s(n + 1)`. A product `P · Q` acts as `Q` first and then
//! `P`, so chains are assembled in the order they are written.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::gcd::{gcd, gcd_cofactors};
use crate::algebra::limit::{limit_at_t_minus1, Limit};
use crate::algebra::ratfunc::reduce_univariate;
use crate::algebra::text::{eval_rational, join_terms, parse_expr, Expr};
use crate::algebra::{RationalFunction, UnivariateFraction, UnivariateLaurent, ZPoly};
use crate::error::{Error, Result};

/// A sequence `n -> Q[t^{±1}]` that operators can act on.
pub trait Sequence {
    fn term(&self, n: i64) -> UnivariateLaurent;
}

impl<F: Fn(i64) -> UnivariateLaurent> Sequence for F {
    fn term(&self, n: i64) -> UnivariateLaurent {
        self(n)
    }
}

/// An element of the extended quantum torus.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SkewOperator {
    coeffs: BTreeMap<i64, RationalFunction>,
}

impl SkewOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(RationalFunction::one())
    }

    /// The operator `c · L^0`.
    pub fn scalar(c: RationalFunction) -> Self {
        Self::from_terms([(0, c)])
    }

    /// The operator `L^k`.
    pub fn l_power(k: i64) -> Self {
        Self::from_terms([(k, RationalFunction::one())])
    }

    /// The operator `M`.
    pub fn m() -> Self {
        Self::scalar(RationalFunction::m())
    }

    /// Sums the given `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, RationalFunction)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<i64, RationalFunction> = BTreeMap::new();
        for (k, c) in terms {
            let sum = match coeffs.remove(&k) {
                Some(old) => &old + &c,
                None => c,
            };
            if !sum.is_zero() {
                coeffs.insert(k, sum);
            }
        }
        SkewOperator { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `L^k`.
    pub fn coeff(&self, k: i64) -> RationalFunction {
        self.coeffs.get(&k).cloned().unwrap_or_else(RationalFunction::zero)
    }

    /// Nonzero coefficients by increasing `L`-exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RationalFunction)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Smallest and largest `L`-exponent.
    pub fn l_degree(&self) -> Result<(i64, i64)> {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(lo), Some(hi)) => Ok((*lo, *hi)),
            _ => Err(Error::ZeroOperator),
        }
    }

    /// The skew product `self · other`.
    pub fn op_mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (j, f) in &self.coeffs {
            for (k, g) in &other.coeffs {
                terms.push((j + k, f * &g.shift_m(*j)));
            }
        }
        Self::from_terms(terms)
    }

    /// Left multiplication by a scalar.
    pub fn scale_left(&self, c: &RationalFunction) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, f)| (*k, c * f)))
    }

    /// The substitution `M -> t^{2j} M` applied to every coefficient.
    pub fn shift_m(&self, j: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, f)| (*k, f.shift_m(j))))
    }

    /// Two-sided inverse of a monomial operator `c · L^k`.
    pub fn invert_monomial(&self) -> Result<Self> {
        if self.coeffs.len() != 1 {
            return Err(Error::Parse("only monomial operators are invertible".into()));
        }
        let (k, c) = self.coeffs.iter().next().unwrap();
        Ok(Self::from_terms([(-k, c.invert()?.shift_m(-k))]))
    }

    /// `(self s)(n)` with one common denominator, not reduced.
    ///
    /// Returns integer Laurent polynomials `(N, D)` in `t`, stored with the
    /// `t`-exponent in the first slot, such that the value is `N / D`.
    pub fn apply_unreduced<S: Sequence + ?Sized>(&self, s: &S, n: i64) -> Result<(ZPoly, ZPoly)> {
        let mut parts = Vec::with_capacity(self.coeffs.len());
        for (k, c) in &self.coeffs {
            let (cn, cd) = c.eval_m_unreduced(n)?;
            let v = s.term(n + k);
            let num = cn.mul(v.numer_poly());
            let den = cd.scale(v.denom_int());
            parts.push((num, den));
        }
        // Group equal denominators so that identical factors are not
        // multiplied into the common denominator twice.
        let mut groups: Vec<(ZPoly, ZPoly)> = Vec::new();
        for (num, den) in parts {
            match groups.iter_mut().find(|(d, _)| *d == den) {
                Some((_, acc)) => *acc = acc.add(&num),
                None => groups.push((den, num)),
            }
        }
        let mut total_num = ZPoly::zero();
        let mut total_den = ZPoly::one();
        for (den, num) in groups {
            total_num = total_num.mul(&den).add(&num.mul(&total_den));
            total_den = total_den.mul(&den);
        }
        Ok((total_num, total_den))
    }

    /// `(self s)(n)` as a reduced fraction.
    pub fn apply<S: Sequence + ?Sized>(&self, s: &S, n: i64) -> Result<UnivariateFraction> {
        let (num, den) = self.apply_unreduced(s, n)?;
        Ok(reduce_univariate(&num, &den))
    }

    /// True when `(self s)(n) = 0`.
    pub fn annihilates_at<S: Sequence + ?Sized>(&self, s: &S, n: i64) -> Result<bool> {
        Ok(self.apply_unreduced(s, n)?.0.is_zero())
    }

    /// The normalized recurrence polynomial of `self`.
    ///
    /// The result is `c · L^{-k} · self` for a scalar `c`, where `k` is the
    /// smallest `L`-exponent. Its coefficients are coprime polynomials in
    /// `Z[t, M]` with no common monomial factor and integer content one,
    /// and the lexicographically smallest monomial of the top coefficient
    /// is positive.
    pub fn normalize(&self) -> Result<Self> {
        let (lo, _) = self.l_degree()?;
        let shifted: Vec<(i64, RationalFunction)> =
            self.coeffs.iter().map(|(k, c)| (k - lo, c.shift_m(-lo))).collect();

        let mut lcm_den = ZPoly::one();
        let mut lcm_scale = BigInt::one();
        for (_, c) in &shifted {
            let (scale, _, _, den) = c.parts();
            let (_, _, rest) = gcd_cofactors(&lcm_den, den);
            lcm_den = lcm_den.mul(&rest);
            lcm_scale = lcm_scale.lcm(scale.denom());
        }

        let mut polys = Vec::with_capacity(shifted.len());
        for (k, c) in &shifted {
            let (scale, (a, b), num, den) = c.parts();
            let cofactor = lcm_den.div_exact(den).expect("denominator divides the lcm");
            let int_scale = (scale * BigRational::from_integer(lcm_scale.clone())).to_integer();
            polys.push((*k, num.mul(&cofactor).scale(&int_scale).mul_monomial(a, b)));
        }

        let mut common = polys[0].1.clone();
        for (_, p) in &polys[1..] {
            common = gcd(&common, p);
        }
        let mut content = BigInt::zero();
        for (_, p) in polys.iter_mut() {
            *p = p.div_exact(&common).expect("gcd divides every coefficient");
            content = content.gcd(&p.content());
        }
        let t_min = polys.iter().map(|(_, p)| p.t_range().unwrap().0).min().unwrap();
        let m_min = polys.iter().map(|(_, p)| p.m_range().unwrap().0).min().unwrap();
        let top = &polys.last().unwrap().1;
        if top.lex_low_coeff().unwrap().is_negative() {
            content = -content;
        }
        Ok(Self::from_terms(polys.iter().map(|(k, p)| {
            let q = p.div_scalar_exact(&content).mul_monomial(-t_min, -m_min);
            (*k, RationalFunction::from_zpolys(&q, &ZPoly::one()).expect("unit denominator"))
        })))
    }

    /// Coefficient-wise limit as `t -> -1`.
    pub fn eval_at_t_minus1(&self) -> Result<AtMinusOne> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            match limit_at_t_minus1(c) {
                Limit::Value(v) => {
                    if !v.is_zero() {
                        coeffs.insert(*k, v);
                    }
                }
                Limit::Pole { .. } => return Err(Error::PoleAtMinusOne { l_exponent: *k }),
            }
        }
        Ok(AtMinusOne { coeffs })
    }
}

/// A Laurent polynomial in `L` with coefficients in `Q(M)`, the value of an
/// operator at `t = -1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtMinusOne {
    pub coeffs: BTreeMap<i64, RationalFunction>,
}

impl AtMinusOne {
    pub fn l_degree(&self) -> Result<(i64, i64)> {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(lo), Some(hi)) => Ok((*lo, *hi)),
            _ => Err(Error::ZeroOperator),
        }
    }

    /// The polynomial with denominators cleared, stored with the
    /// `L`-exponent in the first slot and the `M`-exponent in the second.
    /// The result is integer-primitive, its smallest `L`- and
    /// `M`-exponents are zero, and its top `L`-coefficient has a positive
    /// lowest-degree term.
    pub fn cleared(&self) -> Result<ZPoly> {
        let op = SkewOperator { coeffs: self.coeffs.clone() }.normalize()?;
        let mut terms = Vec::new();
        for (k, c) in op.terms() {
            for ((_, m), v) in c.numerator().numer_poly().terms() {
                terms.push(((k, *m), v.clone()));
            }
        }
        Ok(ZPoly::from_terms(terms))
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_terms(self.coeffs.iter().map(|(k, c)| {
            let body = match *k {
                0 => format!("({c})"),
                1 => format!("({c})*L"),
                _ => format!("({c})*L^{k}"),
            };
            (false, body)
        }));
        f.write_str(&s)
    }
}

impl fmt::Debug for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn eval_operator(e: &Expr) -> Result<SkewOperator> {
    Ok(match e {
        Expr::Var('L') => SkewOperator::l_power(1),
        Expr::Num(_) | Expr::Var(_) => SkewOperator::scalar(eval_rational(e)?),
        Expr::Add(a, b) => &eval_operator(a)? + &eval_operator(b)?,
        Expr::Sub(a, b) => &eval_operator(a)? - &eval_operator(b)?,
        Expr::Mul(a, b) => eval_operator(a)?.op_mul(&eval_operator(b)?),
        Expr::Div(a, b) => {
            let d = eval_operator(b)?;
            if d.is_zero() {
                return Err(Error::Parse("division by zero".into()));
            }
            eval_operator(a)?.op_mul(&d.invert_monomial()?)
        }
        Expr::Neg(a) => -&eval_operator(a)?,
        Expr::Pow(a, k) => {
            let base = eval_operator(a)?;
            let base = if *k < 0 { base.invert_monomial()? } else { base };
            let mut acc = SkewOperator::one();
            for _ in 0..k.unsigned_abs() {
                acc = acc.op_mul(&base);
            }
            acc
        }
    })
}

/// Parses an operator written as a sum of terms `c(t,M)*L^i`, or any
/// expression in `t`, `M` and `L` in which every divisor is a monomial
/// operator.
pub fn parse_operator(s: &str) -> Result<SkewOperator> {
    eval_operator(&parse_expr(s)?)
}

impl Add for &SkewOperator {
    type Output = SkewOperator;
    fn add(self, o: &SkewOperator) -> SkewOperator {
        SkewOperator::from_terms(self.coeffs.iter().chain(&o.coeffs).map(|(k, c)| (*k, c.clone())))
    }
}

impl Sub for &SkewOperator {
    type Output = SkewOperator;
    fn sub(self, o: &SkewOperator) -> SkewOperator {
        self + &(-o)
    }
}

impl Neg for &SkewOperator {
    type Output = SkewOperator;
    fn neg(self) -> SkewOperator {
        SkewOperator { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &SkewOperator {
    type Output = SkewOperator;
    fn mul(self, o: &SkewOperator) -> SkewOperator {
        self.op_mul(o)
    }
}

crate::algebra::laurent::forward_owned_ops!(SkewOperator);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;

    fn op(s: &str) -> SkewOperator {
        parse_operator(s).unwrap()
    }

    fn unknot(n: i64) -> UnivariateLaurent {
        // [n] as the explicit sum t^{2n-2} + t^{2n-6} + ... + t^{2-2n}.
        let k = n.abs();
        let sign = n.signum();
        UnivariateLaurent::from_int_terms((0..k).map(|i| (2 * (k - 1) - 4 * i, sign)))
    }

    #[test]
    fn l_times_m() {
        let p = op("L").op_mul(&op("M"));
        assert_eq!(p, SkewOperator::from_terms([(1, parse_rational("t^2*M").unwrap())]));
    }

    #[test]
    fn ml_squared() {
        let p = op("M*L").op_mul(&op("M*L"));
        assert_eq!(p, SkewOperator::from_terms([(2, parse_rational("t^2*M^2").unwrap())]));
    }

    #[test]
    fn shift_acts_on_unknot() {
        let v = op("L").apply(&unknot, 4).unwrap();
        assert_eq!(v.as_laurent().unwrap(), &unknot(5));
        let w = op("M").apply(&unknot, 2).unwrap();
        assert_eq!(w.as_laurent().unwrap(), &unknot(2).mul_t_power(4));
    }

    #[test]
    fn defining_relation_annihilates() {
        let rel = &op("L*M") - &op("t^2*M*L");
        assert!(rel.is_zero());
        for n in 1..6 {
            assert!(op("L*M - t^2*M*L").annihilates_at(&unknot, n).unwrap());
        }
    }

    #[test]
    fn unknot_first_order_recurrence() {
        // At M = t^{2n} the two coefficients are (t^2 - t^-2)[n] and
        // (t^2 - t^-2)[n+1].
        let a = op("(M - M^-1)*L - (t^2*M - t^-2*M^-1)");
        for n in -4..6 {
            assert!(a.annihilates_at(&unknot, n).unwrap());
        }
    }

    #[test]
    fn normalize_clears_scalars() {
        let p = op("1/2*L^2 + M/2");
        assert_eq!(p.normalize().unwrap(), op("L^2 + M"));
        let q = op("(t+1)/(M-1)*L^3 - 1/(M-1)*L^2");
        let n = q.normalize().unwrap();
        assert_eq!(n.l_degree().unwrap(), (0, 1));
        assert_eq!(n, op("(t + 1)*L - 1"));
    }

    #[test]
    fn text_round_trip() {
        let p = op("(t^2 - M)/(t+1)*L^-1 + 3*L^2 - M");
        assert_eq!(parse_operator(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn pole_is_reported_with_exponent() {
        let p = op("L^2 + 1/(t+1)*L");
        assert_eq!(p.eval_at_t_minus1(), Err(Error::PoleAtMinusOne { l_exponent: 1 }));
    }
}
