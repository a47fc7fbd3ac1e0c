//! Reduced rational functions in `Q(t, M)`.
//!
//! A nonzero value is stored as `c · t^a M^b · N / D` where
//!
//! * `c` is a nonzero rational,
//! * `N` and `D` are integer polynomials with nonnegative exponents, free
//!   of monomial factors, integer-primitive, and coprime,
//! * the lexicographically smallest monomial of `N` and of `D` has a
//!   positive coefficient.
//!
//! Zero is the unique value with `c = 0`, `N = D = 1` and `a = b = 0`.
//! Every operation returns this canonical form, so `==` is equality in
//! `Q(t, M)`.
//!
//! Addition uses Henrici's trick: only the gcd of the two denominators and
//! the gcd of the new numerator with that common part are ever computed.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd_cofactors;
use super::laurent::{BivariateLaurent, UnivariateLaurent};
use super::zpoly::{Exp, ZPoly};
use crate::error::{Error, Result};

/// An element of `Q(t, M)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    scale: BigRational,
    shift: Exp,
    num: ZPoly,
    den: ZPoly,
}

/// A reduced fraction of univariate Laurent polynomials in `t`, the result
/// of substituting `M = t^{2n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariateFraction {
    /// Numerator, carrying the rational scale and the monomial factor.
    pub num: UnivariateLaurent,
    /// Denominator: integer-primitive, no monomial factor, positive lowest
    /// coefficient.
    pub den: UnivariateLaurent,
}

impl UnivariateFraction {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is one.
    pub fn as_laurent(&self) -> Option<&UnivariateLaurent> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }
}

fn rational_int(c: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(c.into())
}

impl RationalFunction {
    /// Canonical form from unreduced pieces that are already coprime.
    fn assemble(scale: BigRational, shift: Exp, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        assert!(!den.is_zero(), "zero denominator");
        let ((na, nb), n1) = num.split_monomial();
        let ((da, db), d1) = den.split_monomial();
        let nc = n1.content();
        let dc = d1.content();
        let mut n2 = n1.div_scalar_exact(&nc);
        let mut d2 = d1.div_scalar_exact(&dc);
        let mut s = scale * BigRational::new(nc, dc);
        if n2.lex_low_coeff().unwrap().is_negative() {
            n2 = n2.neg();
            s = -s;
        }
        if d2.lex_low_coeff().unwrap().is_negative() {
            d2 = d2.neg();
            s = -s;
        }
        RationalFunction { scale: s, shift: (shift.0 + na - da, shift.1 + nb - db), num: n2, den: d2 }
    }

    /// `num / den` for arbitrary integer Laurent polynomials, reduced.
    pub fn from_zpolys(num: &ZPoly, den: &ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (_, n, d) = gcd_cofactors(num, den);
        Ok(Self::assemble(BigRational::one(), (0, 0), n, d))
    }

    /// `num / den` for rational Laurent polynomials, reduced.
    pub fn from_fraction(num: &BivariateLaurent, den: &BivariateLaurent) -> Result<Self> {
        let r = Self::from_zpolys(num.numer_poly(), den.numer_poly())?;
        Ok(r.scale_by(&BigRational::new(den.denom_int().clone(), num.denom_int().clone())))
    }

    pub fn from_laurent(p: &BivariateLaurent) -> Self {
        Self::assemble(
            BigRational::new(BigInt::one(), p.denom_int().clone()),
            (0, 0),
            p.numer_poly().clone(),
            ZPoly::one(),
        )
    }

    pub fn zero() -> Self {
        RationalFunction { scale: BigRational::zero(), shift: (0, 0), num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { scale: c, shift: (0, 0), num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rational_int(c))
    }

    /// `c t^a M^b` with an integer coefficient.
    pub fn monomial(a: i64, b: i64, c: i64) -> Self {
        Self::monomial_q(a, b, rational_int(c))
    }

    pub fn monomial_q(a: i64, b: i64, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { scale: c, shift: (a, b), num: ZPoly::one(), den: ZPoly::one() }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The variable `M`.
    pub fn m() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == (0, 0) && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a monomial, i.e. the value is a
    /// Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True when no power of `t` occurs.
    pub fn is_t_free(&self) -> bool {
        self.shift.0 == 0
            && self.num.t_range().map_or(true, |r| r == (0, 0))
            && self.den.t_range().map_or(true, |r| r == (0, 0))
    }

    /// Numerator as a rational Laurent polynomial, carrying the scale and
    /// the monomial factor.
    pub fn numerator(&self) -> BivariateLaurent {
        if self.is_zero() {
            return BivariateLaurent::zero();
        }
        BivariateLaurent::from_zpoly_over(
            self.num.scale(self.scale.numer()).mul_monomial(self.shift.0, self.shift.1),
            self.scale.denom().clone(),
        )
    }

    /// Normalized denominator polynomial.
    pub fn denominator(&self) -> BivariateLaurent {
        BivariateLaurent::from_zpoly(self.den.clone())
    }

    /// The internal pieces `(scale, (a, b), N, D)`.
    pub fn parts(&self) -> (&BigRational, Exp, &ZPoly, &ZPoly) {
        (&self.scale, self.shift, &self.num, &self.den)
    }

    /// Total term count of numerator and denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn scale_by(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        r.scale = &r.scale * c;
        r
    }

    /// Multiplies by `t^a M^b`.
    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        r.shift = (r.shift.0 + a, r.shift.1 + b);
        r
    }

    fn neg_impl(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        r.scale = -r.scale;
        r
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (_, n1, d2) = if self.num.is_one() || o.den.is_one() {
            (ZPoly::one(), self.num.clone(), o.den.clone())
        } else {
            gcd_cofactors(&self.num, &o.den)
        };
        let (_, n2, d1) = if o.num.is_one() || self.den.is_one() {
            (ZPoly::one(), o.num.clone(), self.den.clone())
        } else {
            gcd_cofactors(&o.num, &self.den)
        };
        Self::assemble(
            &self.scale * &o.scale,
            (self.shift.0 + o.shift.0, self.shift.1 + o.shift.1),
            n1.mul(&n2),
            d1.mul(&d2),
        )
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (g, dx, dy) = if self.den == o.den {
            (self.den.clone(), ZPoly::one(), ZPoly::one())
        } else if self.den.is_one() || o.den.is_one() {
            (ZPoly::one(), self.den.clone(), o.den.clone())
        } else {
            gcd_cofactors(&self.den, &o.den)
        };
        let e = (self.shift.0.min(o.shift.0), self.shift.1.min(o.shift.1));
        let l = self.scale.denom().lcm(o.scale.denom());
        let ax = self.scale.numer() * (&l / self.scale.denom());
        let ay = o.scale.numer() * (&l / o.scale.denom());
        let px = self.num.mul(&dy).scale(&ax).mul_monomial(self.shift.0 - e.0, self.shift.1 - e.1);
        let py = o.num.mul(&dx).scale(&ay).mul_monomial(o.shift.0 - e.0, o.shift.1 - e.1);
        let p = px.add(&py);
        if p.is_zero() {
            return Self::zero();
        }
        let (p, g) = if g.is_one() {
            (p, g)
        } else {
            let (_, p1, g1) = gcd_cofactors(&p, &g);
            (p1, g1)
        };
        Self::assemble(BigRational::new(BigInt::one(), l), e, p, dx.mul(&dy).mul(&g))
    }

    fn sub_impl(&self, o: &Self) -> Self {
        self.add_impl(&o.neg_impl())
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(RationalFunction {
            scale: self.scale.recip(),
            shift: (-self.shift.0, -self.shift.1),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_impl(&o.invert()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The substitution `M -> t^{2j} M`.
    ///
    /// This is a ring automorphism of the Laurent ring, so numerator and
    /// denominator stay coprime and no gcd is needed.
    pub fn shift_m(&self, j: i64) -> Self {
        if j == 0 || self.is_zero() {
            return self.clone();
        }
        Self::assemble(
            self.scale.clone(),
            (self.shift.0 + 2 * j * self.shift.1, self.shift.1),
            self.num.shift_m(j),
            self.den.shift_m(j),
        )
    }

    /// The substitution `M = t^{2n}` as a reduced univariate fraction.
    pub fn eval_m(&self, n: i64) -> Result<UnivariateFraction> {
        let (nz, dz) = self.eval_m_unreduced(n)?;
        Ok(reduce_univariate(&nz, &dz))
    }

    /// Integer numerator and denominator after `M = t^{2n}`, not reduced.
    pub(crate) fn eval_m_unreduced(&self, n: i64) -> Result<(ZPoly, ZPoly)> {
        let dz = self.den.subs_m_power(2 * n).scale(self.scale.denom());
        if dz.is_zero() {
            return Err(Error::DenominatorCollapse { n });
        }
        if self.is_zero() {
            return Ok((ZPoly::zero(), ZPoly::one()));
        }
        let nz = self
            .num
            .subs_m_power(2 * n)
            .scale(self.scale.numer())
            .mul_monomial(self.shift.0 + 2 * n * self.shift.1, 0);
        Ok((nz, dz))
    }
}

/// Reduces a fraction of integer Laurent polynomials in `t` alone.
pub(crate) fn reduce_univariate(nz: &ZPoly, dz: &ZPoly) -> UnivariateFraction {
    if nz.is_zero() {
        return UnivariateFraction { num: UnivariateLaurent::zero(), den: UnivariateLaurent::one() };
    }
    let (_, n1, d1) = gcd_cofactors(nz, dz);
    let ((da, _), d2) = d1.split_monomial();
    let dc = d2.content();
    let (sign, d3) = d2.div_scalar_exact(&dc).normalize_sign();
    let n2 = n1.mul_monomial(-da, 0).scale(&BigInt::from(sign));
    UnivariateFraction {
        num: UnivariateLaurent::from_zpoly_over(n2, dc),
        den: UnivariateLaurent::from_zpoly(d3),
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::text::format_rational(self))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::add_impl(self, o)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::sub_impl(self, o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::mul_impl(self, o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg_impl(self)
    }
}

/// Division panics on a zero divisor; use [`RationalFunction::div`] for a
/// fallible version.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::div(self, o).expect("division by zero rational function")
    }
}

super::laurent::forward_owned_ops!(RationalFunction);

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: RationalFunction) -> RationalFunction {
        &self / &o
    }
}

impl From<&BivariateLaurent> for RationalFunction {
    fn from(p: &BivariateLaurent) -> Self {
        RationalFunction::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64, i64)]) -> RationalFunction {
        RationalFunction::from_laurent(&BivariateLaurent::from_zpoly(ZPoly::from_terms(
            terms.iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))),
        )))
    }

    #[test]
    fn additive_inverse_is_zero() {
        let x = RationalFunction::monomial(1, -1, 1);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&x + &(-&x), RationalFunction::zero());
    }

    #[test]
    fn difference_times_sum() {
        let a = lp(&[(2, 0, 1), (-2, 0, -1)]);
        let b = lp(&[(2, 0, 1), (-2, 0, 1)]);
        assert_eq!(&a * &b, lp(&[(4, 0, 1), (-4, 0, -1)]));
    }

    #[test]
    fn fraction_reduces() {
        let a = lp(&[(2, 0, 1), (-2, 0, -1)]);
        let b = lp(&[(1, 0, 1), (-1, 0, -1)]);
        assert_eq!(&a / &b, lp(&[(1, 0, 1), (-1, 0, 1)]));
        let x = &lp(&[(0, 1, 1), (1, 0, 3)]) / &lp(&[(0, 2, 1), (5, 0, -2)]);
        assert_eq!(&(&x * &a) / &a, x);
    }

    #[test]
    fn henrici_sum_matches_hand_expansion() {
        // 1/(t-1) + 1/(t+1) = 2t/(t^2-1)
        let u = &RationalFunction::one() / &lp(&[(1, 0, 1), (0, 0, -1)]);
        let v = &RationalFunction::one() / &lp(&[(1, 0, 1), (0, 0, 1)]);
        let w = &lp(&[(1, 0, 2)]) / &lp(&[(2, 0, 1), (0, 0, -1)]);
        assert_eq!(&u + &v, w);
    }

    #[test]
    fn invert_and_shift() {
        assert_eq!(
            RationalFunction::monomial(0, 2, 1).invert().unwrap(),
            RationalFunction::monomial(0, -2, 1)
        );
        assert_eq!(RationalFunction::zero().invert(), Err(Error::ZeroInversion));
        assert_eq!(RationalFunction::m().shift_m(1), RationalFunction::monomial(2, 1, 1));
        assert_eq!(RationalFunction::monomial(3, -2, 1).shift_m(2), RationalFunction::monomial(-5, -2, 1));
    }

    #[test]
    fn eval_bracket_form() {
        // (M^2 t^2 - M^-2 t^-2)/(t^2 - t^-2) at n = 1 is t^4 + 1 + t^-4
        let x = &lp(&[(2, 2, 1), (-2, -2, -1)]) / &lp(&[(2, 0, 1), (-2, 0, -1)]);
        let v = x.eval_m(1).unwrap();
        assert_eq!(v.as_laurent().unwrap(), &UnivariateLaurent::from_int_terms([(4, 1), (0, 1), (-4, 1)]));
        let y = lp(&[(0, 1, 1), (2, 0, -1)]);
        assert!(y.eval_m(1).unwrap().is_zero());
        let z = &RationalFunction::one() / &y;
        assert_eq!(z.eval_m(1), Err(Error::DenominatorCollapse { n: 1 }));
    }
}
