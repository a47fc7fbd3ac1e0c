//! Laurent polynomials with rational coefficients.
//!
//! Both types store an integer polynomial together with one positive common
//! denominator that is coprime to the content of the numerator. This keeps
//! the representation canonical while letting all arithmetic run on the
//! integer kernel.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::{Exp, ZPoly};
use crate::error::{Error, Result};

/// A Laurent polynomial in `t` and `M` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivariateLaurent {
    num: ZPoly,
    den: BigInt,
}

impl BivariateLaurent {
    /// `num / den`, brought to canonical form. Panics if `den` is zero.
    pub fn from_zpoly_over(num: ZPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.content().gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_scalar_exact(&g), den / &g) };
        if den.is_negative() {
            BivariateLaurent { num: num.neg(), den: -den }
        } else {
            BivariateLaurent { num, den }
        }
    }

    pub fn from_zpoly(num: ZPoly) -> Self {
        BivariateLaurent { num, den: BigInt::one() }
    }

    /// Builds from `((t, M), coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, BigRational)>,
    {
        let terms: Vec<(Exp, BigRational)> = terms.into_iter().collect();
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let num = ZPoly::from_terms(terms.into_iter().map(|(e, c)| (e, c.numer() * (&den / c.denom()))));
        Self::from_zpoly_over(num, den)
    }

    pub fn zero() -> Self {
        BivariateLaurent { num: ZPoly::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_zpoly(ZPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(t: i64, m: i64, c: BigRational) -> Self {
        let (n, d) = (c.numer().clone(), c.denom().clone());
        Self::from_zpoly_over(ZPoly::monomial(t, m, n), d)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_zpoly(ZPoly::monomial(1, 0, 1))
    }

    /// The variable `M`.
    pub fn m() -> Self {
        Self::from_zpoly(ZPoly::monomial(0, 1, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Terms in increasing lexicographic `(t, M)` order.
    pub fn terms(&self) -> Vec<(Exp, BigRational)> {
        self.num.terms().iter().map(|(e, c)| (*e, BigRational::new(c.clone(), self.den.clone()))).collect()
    }

    pub fn coeff(&self, t: i64, m: i64) -> BigRational {
        BigRational::new(self.num.coeff(t, m), self.den.clone())
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    /// Integer numerator polynomial.
    pub fn numer_poly(&self) -> &ZPoly {
        &self.num
    }

    /// Positive common denominator.
    pub fn denom_int(&self) -> &BigInt {
        &self.den
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_zpoly_over(self.num.scale(c.numer()), &self.den * c.denom())
    }

    pub fn mul_monomial(&self, t: i64, m: i64) -> Self {
        BivariateLaurent { num: self.num.mul_monomial(t, m), den: self.den.clone() }
    }

    /// The substitution `M -> t^{2j} M`.
    pub fn shift_m(&self, j: i64) -> Self {
        BivariateLaurent { num: self.num.shift_m(j), den: self.den.clone() }
    }

    /// The substitution `M -> t^{2n}`.
    pub fn eval_m(&self, n: i64) -> UnivariateLaurent {
        UnivariateLaurent(Self::from_zpoly_over(self.num.subs_m_power(2 * n), self.den.clone()))
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let q = self.num.div_exact(&d.num)?;
        Some(Self::from_zpoly_over(q.scale(&d.den), self.den.clone()))
    }
}

impl fmt::Debug for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::text::format_bivariate(self))
    }
}

impl Add for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn add(self, o: &BivariateLaurent) -> BivariateLaurent {
        if self.den == o.den {
            return BivariateLaurent::from_zpoly_over(self.num.add(&o.num), self.den.clone());
        }
        let l = self.den.lcm(&o.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = o.num.scale(&(&l / &o.den));
        BivariateLaurent::from_zpoly_over(a.add(&b), l)
    }
}

impl Neg for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn neg(self) -> BivariateLaurent {
        BivariateLaurent { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Sub for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn sub(self, o: &BivariateLaurent) -> BivariateLaurent {
        self + &(-o)
    }
}

impl Mul for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn mul(self, o: &BivariateLaurent) -> BivariateLaurent {
        BivariateLaurent::from_zpoly_over(self.num.mul(&o.num), &self.den * &o.den)
    }
}

/// A Laurent polynomial in `t` alone over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnivariateLaurent(BivariateLaurent);

impl UnivariateLaurent {
    pub fn zero() -> Self {
        UnivariateLaurent(BivariateLaurent::zero())
    }

    pub fn one() -> Self {
        UnivariateLaurent(BivariateLaurent::one())
    }

    pub fn monomial(e: i64, c: BigRational) -> Self {
        UnivariateLaurent(BivariateLaurent::monomial(e, 0, c))
    }

    /// `c t^e` with an integer coefficient.
    pub fn int_monomial(e: i64, c: i64) -> Self {
        Self::monomial(e, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        UnivariateLaurent(BivariateLaurent::from_terms(terms.into_iter().map(|(e, c)| ((e, 0), c))))
    }

    /// Builds from integer coefficients.
    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_zpoly(ZPoly::from_terms(terms.into_iter().map(|(e, c)| ((e, 0), BigInt::from(c)))))
    }

    /// Wraps an integer polynomial whose `M`-exponents are all zero.
    pub fn from_zpoly(p: ZPoly) -> Self {
        debug_assert!(p.terms().iter().all(|(e, _)| e.1 == 0));
        UnivariateLaurent(BivariateLaurent::from_zpoly(p))
    }

    pub(crate) fn from_zpoly_over(p: ZPoly, den: BigInt) -> Self {
        debug_assert!(p.terms().iter().all(|(e, _)| e.1 == 0));
        UnivariateLaurent(BivariateLaurent::from_zpoly_over(p, den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, BigRational)> {
        self.0.terms().into_iter().map(|((e, _), c)| (e, c)).collect()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.0.coeff(e, 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.den.is_one()
    }

    pub fn numer_poly(&self) -> &ZPoly {
        &self.0.num
    }

    pub fn denom_int(&self) -> &BigInt {
        &self.0.den
    }

    /// Lowest exponent, written ℓ in the degree formulas.
    pub fn lowest_degree(&self) -> Result<i64> {
        self.0.num.t_range().map(|r| r.0).ok_or(Error::ZeroPolynomial)
    }

    /// Highest exponent, written ħ in the degree formulas.
    pub fn highest_degree(&self) -> Result<i64> {
        self.0.num.t_range().map(|r| r.1).ok_or(Error::ZeroPolynomial)
    }

    /// Multiplies by `t^k`.
    pub fn mul_t_power(&self, k: i64) -> Self {
        UnivariateLaurent(self.0.mul_monomial(k, 0))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        UnivariateLaurent(self.0.scale(c))
    }

    /// Exact quotient in `Q[t^{±1}]`, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.0.div_exact(&d.0).map(UnivariateLaurent)
    }

    /// The same polynomial viewed as a bivariate one.
    pub fn as_bivariate(&self) -> &BivariateLaurent {
        &self.0
    }
}

impl fmt::Debug for UnivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for UnivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn add(self, o: &UnivariateLaurent) -> UnivariateLaurent {
        UnivariateLaurent(&self.0 + &o.0)
    }
}

impl Sub for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn sub(self, o: &UnivariateLaurent) -> UnivariateLaurent {
        UnivariateLaurent(&self.0 - &o.0)
    }
}

impl Neg for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn neg(self) -> UnivariateLaurent {
        UnivariateLaurent(-&self.0)
    }
}

impl Mul for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn mul(self, o: &UnivariateLaurent) -> UnivariateLaurent {
        UnivariateLaurent(&self.0 * &o.0)
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned_ops!(BivariateLaurent);
forward_owned_ops!(UnivariateLaurent);
pub(crate) use forward_owned_ops;

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_coefficients_stay_canonical() {
        let a = BivariateLaurent::monomial(1, 0, q(1, 2));
        let b = BivariateLaurent::monomial(1, 0, q(1, 2));
        let s = &a + &b;
        assert_eq!(s, BivariateLaurent::t());
        assert_eq!(s.denom_int(), &BigInt::one());
    }

    #[test]
    fn degrees_of_a_product_add() {
        let f = UnivariateLaurent::from_int_terms([(-4, 1), (2, 1)]);
        assert_eq!(f.lowest_degree(), Ok(-4));
        assert_eq!(f.highest_degree(), Ok(2));
        let g = UnivariateLaurent::from_int_terms([(3, 2), (-1, -1)]);
        let fg = &f * &g;
        assert_eq!(fg.lowest_degree().unwrap(), -5);
        assert_eq!(fg.highest_degree().unwrap(), 5);
        assert_eq!(UnivariateLaurent::zero().lowest_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn evaluation_at_m_equals_t_power() {
        let x = &BivariateLaurent::m() - &BivariateLaurent::monomial(2, 0, q(1, 1));
        assert!(x.eval_m(1).is_zero());
        assert_eq!(BivariateLaurent::m().eval_m(3), UnivariateLaurent::int_monomial(6, 1));
    }
}
