//! Sparse bivariate integer Laurent polynomials in `t` and `M`.
//!
//! [`ZPoly`] is the integer kernel underneath every coefficient type in the
//! crate. Terms are kept sorted by `(t-exponent, M-exponent)` in increasing
//! lexicographic order with no zero coefficients, so structural equality is
//! value equality. Univariate polynomials in `t` are the special case where
//! every `M`-exponent is zero.
//!
//! Products and exact quotients use a dense `i128` accumulator over the
//! exponent box whenever the coefficient sizes allow it, and fall back to
//! arbitrary-precision arithmetic otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent pair `(t, M)`.
pub type Exp = (i64, i64);

/// Largest exponent box handled by the dense kernels.
const DENSE_CELLS: i128 = 1 << 23;

/// A Laurent polynomial in `t` and `M` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    terms: Vec<(Exp, BigInt)>,
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly[")?;
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}*t^{a}*M^{b}")?;
        }
        write!(f, "]")
    }
}

fn bits_i64(c: i64) -> u64 {
    64 - c.unsigned_abs().leading_zeros() as u64
}

fn ceil_log2(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - ((n - 1) as u64).leading_zeros() as u64
    }
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c.into())
    }

    pub fn monomial(t: i64, m: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            ZPoly { terms: vec![((t, m), c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, BigInt)>,
    {
        let mut v: Vec<(Exp, BigInt)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exp, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ZPoly { terms: out }
    }

    /// Builds from terms already sorted strictly increasing with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Exp, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        ZPoly { terms }
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exp, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of `t^a M^b`.
    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        match self.terms.binary_search_by(|(e, _)| e.cmp(&(a, b))) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Minimum and maximum `t`-exponent.
    pub fn t_range(&self) -> Option<(i64, i64)> {
        Some((self.terms.first()?.0 .0, self.terms.last()?.0 .0))
    }

    /// Minimum and maximum `M`-exponent.
    pub fn m_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.iter().map(|(e, _)| e.1).min()?;
        let hi = self.terms.iter().map(|(e, _)| e.1).max()?;
        Some((lo, hi))
    }

    /// Coefficient of the lexicographically smallest monomial.
    pub fn lex_low_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of the lexicographically largest monomial.
    pub fn lex_lead_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest bit length among the coefficients.
    pub fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    /// Multiplies every exponent vector by the monomial `t^a M^b`.
    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        ZPoly { terms: self.terms.iter().map(|((x, y), c)| ((x + a, y + b), c.clone())).collect() }
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Divides every coefficient by an integer that divides all of them.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        ZPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % k).is_zero());
                    (*e, c / k)
                })
                .collect(),
        }
    }

    /// Splits off the largest monomial factor: returns `((a, b), q)` with
    /// `self = t^a M^b q` and `q` having nonnegative exponents, each
    /// variable attaining exponent zero somewhere.
    pub fn split_monomial(&self) -> (Exp, Self) {
        if self.is_zero() {
            return ((0, 0), Self::zero());
        }
        let a = self.terms[0].0 .0;
        let b = self.terms.iter().map(|(e, _)| e.1).min().unwrap();
        if a == 0 && b == 0 {
            return ((0, 0), self.clone());
        }
        ((a, b), self.mul_monomial(-a, -b))
    }

    /// Applies an exponent map that is injective on the support.
    pub(crate) fn map_exponents(&self, f: impl Fn(Exp) -> Exp) -> Self {
        let mut terms: Vec<(Exp, BigInt)> = self.terms.iter().map(|(e, c)| (f(*e), c.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
        ZPoly { terms }
    }

    /// The substitution `M -> t^{2j} M`.
    pub fn shift_m(&self, j: i64) -> Self {
        if j == 0 {
            return self.clone();
        }
        self.map_exponents(|(a, b)| (a + 2 * j * b, b))
    }

    /// The substitution `M -> t^{k}`, giving a polynomial in `t` alone.
    pub fn subs_m_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| ((a + k * b, 0), c.clone())))
    }

    /// The substitution `t -> s`, for an integer `s`, giving a polynomial
    /// in `M` alone. Negative `t`-exponents require `s` to be a unit.
    pub fn subs_t_value(&self, s: i64) -> Self {
        assert!(s == 1 || s == -1 || self.terms.iter().all(|(e, _)| e.0 >= 0));
        let sb = BigInt::from(s);
        Self::from_terms(self.terms.iter().map(|((a, b), c)| {
            let w = if *a >= 0 {
                num_traits::pow(sb.clone(), *a as usize)
            } else {
                num_traits::pow(sb.clone(), (-*a) as usize)
            };
            ((0, *b), c * w)
        }))
    }

    pub fn neg(&self) -> Self {
        ZPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        ZPoly { terms: out }
    }

    fn small_coeffs(&self) -> Option<Vec<i64>> {
        self.terms.iter().map(|(_, c)| c.to_i64()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let ((a, b), c) = &self.terms[0];
            return other.mul_monomial(*a, *b).scale(c);
        }
        if other.terms.len() == 1 {
            let ((a, b), c) = &other.terms[0];
            return self.mul_monomial(*a, *b).scale(c);
        }
        let (ta0, ta1) = self.t_range().unwrap();
        let (tb0, tb1) = other.t_range().unwrap();
        let (ma0, ma1) = self.m_range().unwrap();
        let (mb0, mb1) = other.m_range().unwrap();
        let tw = (ta1 - ta0 + tb1 - tb0 + 1) as i128;
        let mw = (ma1 - ma0 + mb1 - mb0 + 1) as i128;
        let cells = tw * mw;
        if cells <= DENSE_CELLS {
            if let (Some(ca), Some(cb)) = (self.small_coeffs(), other.small_coeffs()) {
                let ba = ca.iter().map(|&c| bits_i64(c)).max().unwrap_or(0);
                let bb = cb.iter().map(|&c| bits_i64(c)).max().unwrap_or(0);
                if ba + bb + ceil_log2(self.len().min(other.len())) <= 126 {
                    return self.mul_dense_i128(other, &ca, &cb, mw as i64, cells as usize);
                }
            }
            return self.mul_dense_big(other, mw as i64, cells as usize);
        }
        let mut acc: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                *acc.entry((a1 + a2, b1 + b2)).or_default() += c1 * c2;
            }
        }
        ZPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn linear_indices(&self, t0: i64, m0: i64, mw: i64) -> Vec<usize> {
        self.terms.iter().map(|((a, b), _)| ((a - t0) * mw + (b - m0)) as usize).collect()
    }

    fn mul_dense_i128(&self, other: &Self, ca: &[i64], cb: &[i64], mw: i64, cells: usize) -> Self {
        let t0 = self.terms[0].0 .0 + other.terms[0].0 .0;
        let (ma0, _) = self.m_range().unwrap();
        let (mb0, _) = other.m_range().unwrap();
        let ia = self.linear_indices(self.terms[0].0 .0, ma0, mw);
        let ib = other.linear_indices(other.terms[0].0 .0, mb0, mw);
        let mut acc = vec![0i128; cells];
        for (&x, &c1) in ia.iter().zip(ca) {
            let c1 = c1 as i128;
            let row = &mut acc[x..];
            for (&y, &c2) in ib.iter().zip(cb) {
                row[y] += c1 * c2 as i128;
            }
        }
        let m0 = ma0 + mb0;
        let mut terms = Vec::new();
        for (idx, &v) in acc.iter().enumerate() {
            if v != 0 {
                let i = idx as i64;
                terms.push(((t0 + i / mw, m0 + i % mw), BigInt::from(v)));
            }
        }
        ZPoly { terms }
    }

    fn mul_dense_big(&self, other: &Self, mw: i64, cells: usize) -> Self {
        let t0 = self.terms[0].0 .0 + other.terms[0].0 .0;
        let (ma0, _) = self.m_range().unwrap();
        let (mb0, _) = other.m_range().unwrap();
        let ia = self.linear_indices(self.terms[0].0 .0, ma0, mw);
        let ib = other.linear_indices(other.terms[0].0 .0, mb0, mw);
        let mut acc = vec![BigInt::zero(); cells];
        for (&x, (_, c1)) in ia.iter().zip(&self.terms) {
            for (&y, (_, c2)) in ib.iter().zip(&other.terms) {
                acc[x + y] += c1 * c2;
            }
        }
        let m0 = ma0 + mb0;
        let mut terms = Vec::new();
        for (idx, v) in acc.into_iter().enumerate() {
            if !v.is_zero() {
                let i = idx as i64;
                terms.push(((t0 + i / mw, m0 + i % mw), v));
            }
        }
        ZPoly { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` when `d`
    /// does not divide `self` there. Panics if `d` is zero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let ((a, b), c) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.len());
            for ((x, y), v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push(((x - a, y - b), q));
            }
            return Some(ZPoly { terms });
        }
        let (ta0, ta1) = self.t_range().unwrap();
        let (ma0, ma1) = self.m_range().unwrap();
        let (tb0, tb1) = d.t_range().unwrap();
        let (mb0, mb1) = d.m_range().unwrap();
        let qt = (ta0 - tb0, ta1 - tb1);
        let qm = (ma0 - mb0, ma1 - mb1);
        if qt.0 > qt.1 || qm.0 > qm.1 {
            return None;
        }
        let mw = (ma1 - ma0 + 1) as i128;
        let cells = (ta1 - ta0 + 1) as i128 * mw;
        if cells <= DENSE_CELLS {
            if let (Some(ca), Some(cd)) = (self.small_coeffs(), d.small_coeffs()) {
                let cd128: Vec<i128> = cd.iter().map(|&c| c as i128).collect();
                if let Some(q) = self.div_dense_i128(d, &ca, &cd128, qt, qm, mw as i64, cells as usize) {
                    return q;
                }
            }
            return self.div_dense_big(d, qt, qm, mw as i64, cells as usize);
        }
        self.div_sparse(d, qt, qm)
    }

    /// Dense exact division with checked `i128` arithmetic. The outer
    /// `None` means an overflow occurred and the caller must retry with
    /// big integers.
    #[allow(clippy::too_many_arguments)]
    fn div_dense_i128(
        &self,
        d: &Self,
        ca: &[i64],
        cd: &[i128],
        qt: (i64, i64),
        qm: (i64, i64),
        mw: i64,
        cells: usize,
    ) -> Option<Option<Self>> {
        let ta0 = self.terms[0].0 .0;
        let (ma0, _) = self.m_range().unwrap();
        let mut rem = vec![0i128; cells];
        for (((a, b), _), &c) in self.terms.iter().zip(ca) {
            rem[((a - ta0) * mw + (b - ma0)) as usize] = c as i128;
        }
        let ((lt, lm), _) = d.terms.last().unwrap();
        let lc = *cd.last().unwrap();
        let offs: Vec<i64> = d.terms.iter().map(|((a, b), _)| (a - lt) * mw + (b - lm)).collect();
        let mut quot: Vec<(Exp, BigInt)> = Vec::new();
        let mut idx = cells;
        while idx > 0 {
            idx -= 1;
            let v = rem[idx];
            if v == 0 {
                continue;
            }
            let i = idx as i64;
            let (qa, qb) = (ta0 + i / mw - lt, ma0 + i % mw - lm);
            if qa < qt.0 || qa > qt.1 || qb < qm.0 || qb > qm.1 || v % lc != 0 {
                return Some(None);
            }
            let q = v / lc;
            for (&o, &c) in offs.iter().zip(cd) {
                let k = (i + o) as usize;
                let prod = q.checked_mul(c)?;
                rem[k] = rem[k].checked_sub(prod)?;
            }
            quot.push(((qa, qb), BigInt::from(q)));
        }
        quot.reverse();
        Some(Some(ZPoly { terms: quot }))
    }

    fn div_dense_big(&self, d: &Self, qt: (i64, i64), qm: (i64, i64), mw: i64, cells: usize) -> Option<Self> {
        let ta0 = self.terms[0].0 .0;
        let (ma0, _) = self.m_range().unwrap();
        let mut rem = vec![BigInt::zero(); cells];
        for ((a, b), c) in &self.terms {
            rem[((a - ta0) * mw + (b - ma0)) as usize] = c.clone();
        }
        let ((lt, lm), lc) = d.terms.last().unwrap();
        let offs: Vec<i64> = d.terms.iter().map(|((a, b), _)| (a - lt) * mw + (b - lm)).collect();
        let mut quot: Vec<(Exp, BigInt)> = Vec::new();
        let mut idx = cells;
        while idx > 0 {
            idx -= 1;
            if rem[idx].is_zero() {
                continue;
            }
            let i = idx as i64;
            let (qa, qb) = (ta0 + i / mw - lt, ma0 + i % mw - lm);
            if qa < qt.0 || qa > qt.1 || qb < qm.0 || qb > qm.1 {
                return None;
            }
            let (q, r) = rem[idx].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (&o, (_, c)) in offs.iter().zip(&d.terms) {
                let k = (i + o) as usize;
                rem[k] -= &q * c;
            }
            quot.push(((qa, qb), q));
        }
        quot.reverse();
        Some(ZPoly { terms: quot })
    }

    fn div_sparse(&self, d: &Self, qt: (i64, i64), qm: (i64, i64)) -> Option<Self> {
        let mut rem: BTreeMap<Exp, BigInt> = self.terms.iter().cloned().collect();
        let ((lt, lm), lc) = d.terms.last().unwrap().clone();
        let mut quot: Vec<(Exp, BigInt)> = Vec::new();
        while let Some((&(a, b), v)) = rem.iter().next_back() {
            let (qa, qb) = (a - lt, b - lm);
            if qa < qt.0 || qa > qt.1 || qb < qm.0 || qb > qm.1 {
                return None;
            }
            let (q, r) = v.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for ((x, y), c) in &d.terms {
                let key = (x + qa, y + qb);
                let e = rem.entry(key).or_default();
                *e -= &q * c;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push(((qa, qb), q));
        }
        quot.reverse();
        Some(ZPoly { terms: quot })
    }

    /// Polynomial in `t` over `Z[M]` evaluated at `t = -1`.
    pub fn at_t_minus_one(&self) -> Self {
        self.subs_t_value(-1)
    }

    /// The polynomial with `t` and `M` exchanged.
    pub fn swap_vars(&self) -> Self {
        self.map_exponents(|(a, b)| (b, a))
    }

    /// Normalizes the sign so that the lexicographically smallest
    /// coefficient is positive; returns the sign that was removed.
    pub fn normalize_sign(&self) -> (i8, Self) {
        match self.lex_low_coeff() {
            Some(c) if c.is_negative() => (-1, self.neg()),
            _ => (1, self.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> ZPoly {
        ZPoly::from_terms(terms.iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))))
    }

    #[test]
    fn product_of_difference_and_sum() {
        let a = p(&[(2, 0, 1), (-2, 0, -1)]);
        let b = p(&[(2, 0, 1), (-2, 0, 1)]);
        assert_eq!(a.mul(&b), p(&[(4, 0, 1), (-4, 0, -1)]));
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = p(&[(1, 0, 1), (0, 1, 3), (2, 2, -5)]);
        let b = p(&[(0, 0, 7), (3, 1, 1), (1, 4, -2)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&a), Some(b));
        assert_eq!(ab.add(&ZPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn big_coefficients_use_big_path() {
        let huge = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let a = ZPoly::from_terms(vec![((0, 0), huge.clone()), ((1, 0), BigInt::from(1))]);
        let b = ZPoly::from_terms(vec![((0, 0), huge.clone()), ((1, 1), BigInt::from(-3))]);
        let ab = a.mul(&b);
        assert_eq!(ab.coeff(0, 0), &huge * &huge);
        assert_eq!(ab.div_exact(&a), Some(b));
    }

    #[test]
    fn shift_and_substitution() {
        let x = p(&[(3, -2, 1)]);
        assert_eq!(x.shift_m(2), p(&[(-5, -2, 1)]));
        let y = p(&[(0, 1, 1), (2, 0, -1)]);
        assert!(y.subs_m_power(2).is_zero());
    }

    #[test]
    fn split_monomial_leaves_nonnegative_exponents() {
        let x = p(&[(-3, 2, 1), (1, -1, 4)]);
        let ((a, b), q) = x.split_monomial();
        assert_eq!((a, b), (-3, -1));
        assert_eq!(q, p(&[(0, 3, 1), (4, 0, 4)]));
    }
}
