//! A-polynomials of torus knots and of connected sums of two torus knots.
//!
//! Every A-polynomial handled here is a product of distinct binomials
//! `L M^r - δ` with `δ = ±1`. The A-polynomial of a connected sum is the
//! product of all pairwise products `L M^{r_i + s_j} - δ_i δ_j` with
//! repeated factors removed; closed forms for the nine parameter patterns
//! are provided separately as an independent check.
//!
//! Polynomials in `M` and `L` are stored as [`ZPoly`] values with the
//! `L`-exponent in the first slot and the `M`-exponent in the second.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::text::format_ml;
use crate::algebra::ZPoly;
use crate::error::{Error, Result};
use crate::jones::{KnotExpr, TorusKnotParam};

/// The binomial `L M^r - delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinomialFactor {
    pub r: i64,
    pub delta: i8,
}

impl BinomialFactor {
    pub fn new(r: i64, delta: i8) -> Result<Self> {
        if delta != 1 && delta != -1 {
            return Err(Error::NonBinomialInput(format!("delta = {delta} in L*M^{r} - delta")));
        }
        Ok(BinomialFactor { r, delta })
    }

    fn of(r: i64, delta: i8) -> Self {
        BinomialFactor { r, delta }
    }

    /// The pair `L M^r - 1`, `L M^r + 1` from `M^{2r} L^2 - 1`.
    fn pair(r: i64) -> [Self; 2] {
        [Self::of(r, 1), Self::of(r, -1)]
    }

    pub fn to_poly(&self) -> ZPoly {
        ZPoly::from_terms([((1, self.r), BigInt::from(1)), ((0, 0), BigInt::from(-self.delta))])
    }
}

impl fmt::Display for BinomialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_ml(&self.to_poly()))
    }
}

/// Removes repeated factors, keeping the first occurrence of each.
pub fn squarefree_binomials(factors: &[BinomialFactor]) -> Vec<BinomialFactor> {
    let mut out: Vec<BinomialFactor> = Vec::with_capacity(factors.len());
    for f in factors {
        if !out.contains(f) {
            out.push(*f);
        }
    }
    out
}

/// Brings a polynomial in `M` and `L` to the representative used for
/// comparisons up to a unit `±M^k`: integer-primitive, smallest
/// `L`-exponent zero, smallest `M`-exponent among the `L^0` terms zero
/// (among all terms if there are none), and positive coefficient on the
/// lexicographically smallest monomial.
pub fn unit_normalize(p: &ZPoly) -> ZPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.content();
    let q = p.div_scalar_exact(&c);
    let l_min = q.t_range().unwrap().0;
    let band: Vec<i64> = q.terms().iter().filter(|(e, _)| e.0 == l_min).map(|(e, _)| e.1).collect();
    let m_min = band.into_iter().min().unwrap();
    let q = q.mul_monomial(-l_min, -m_min);
    if q.lex_low_coeff().unwrap().is_negative() {
        q.neg()
    } else {
        q
    }
}

/// A squarefree product of binomial factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APoly {
    factors: Vec<BinomialFactor>,
}

impl APoly {
    /// The product of the distinct entries of `factors`.
    pub fn new(factors: &[BinomialFactor]) -> Self {
        APoly { factors: squarefree_binomials(factors) }
    }

    pub fn factors(&self) -> &[BinomialFactor] {
        &self.factors
    }

    /// The expanded product.
    pub fn expansion(&self) -> ZPoly {
        self.factors.iter().fold(ZPoly::one(), |acc, f| acc.mul(&f.to_poly()))
    }

    /// The expansion in the unit-normalized form of [`unit_normalize`].
    pub fn normalized(&self) -> ZPoly {
        unit_normalize(&self.expansion())
    }

    /// Equality of expansions up to a unit `±M^k`.
    pub fn equivalent(&self, other: &APoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// The factors as a sorted multiset, for order-independent comparison.
    pub fn sorted_factors(&self) -> Vec<BinomialFactor> {
        let mut v = self.factors.clone();
        v.sort_by_key(|f| (f.r, f.delta));
        v
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|b| format!("({b})")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The A-polynomial of a torus knot: `(L - 1)(M^{2pq} L^2 - 1)` when
/// `q > 2` and `(L - 1)(M^{2p} L + 1)` when `q = 2`.
pub fn apoly_torus(k: TorusKnotParam) -> APoly {
    let one = BinomialFactor::of(0, 1);
    if k.q == 2 {
        APoly::new(&[one, BinomialFactor::of(2 * k.p, -1)])
    } else {
        let [a, b] = BinomialFactor::pair(k.pq());
        APoly::new(&[one, a, b])
    }
}

/// The A-polynomial of the unknot, `L - 1`.
pub fn apoly_unknot() -> APoly {
    APoly::new(&[BinomialFactor::of(0, 1)])
}

/// The A-polynomial of a connected sum from those of its summands.
pub fn apoly_sum_general(a1: &APoly, a2: &APoly) -> APoly {
    let mut out = Vec::with_capacity(a1.factors.len() * a2.factors.len());
    for x in &a1.factors {
        for y in &a2.factors {
            out.push(BinomialFactor::of(x.r + y.r, x.delta * y.delta));
        }
    }
    APoly::new(&out)
}

/// The nine parameter patterns of the closed-form A-polynomials of
/// `T(p,q) # T(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaCase {
    /// `q, b > 2` and `pq ≠ ±ab`.
    I,
    /// `q, b > 2` and `pq = ab`.
    II,
    /// `q, b > 2` and `pq = -ab`.
    III,
    /// `q > 2`, `b = 2` and `pq ≠ ±2a`.
    IV,
    /// `q > 2`, `b = 2` and `pq = 2a`.
    V,
    /// `q > 2`, `b = 2` and `pq = -2a`.
    VI,
    /// `q = b = 2` and `p ≠ ±a`.
    VII,
    /// `q = b = 2` and `p = a`.
    VIII,
    /// `q = b = 2` and `p = -a`.
    IX,
}

impl fmt::Display for LemmaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LemmaCase::I => "i",
            LemmaCase::II => "ii",
            LemmaCase::III => "iii",
            LemmaCase::IV => "iv",
            LemmaCase::V => "v",
            LemmaCase::VI => "vi",
            LemmaCase::VII => "vii",
            LemmaCase::VIII => "viii",
            LemmaCase::IX => "ix",
        };
        f.write_str(s)
    }
}

/// The pattern of `T(p,q) # T(a,b)`, with the summands reordered so that
/// a knot with `q > 2` comes first when exactly one of `q, b` equals 2.
pub fn classify_lemma(k1: TorusKnotParam, k2: TorusKnotParam) -> (LemmaCase, TorusKnotParam, TorusKnotParam) {
    let (k1, k2) = if k1.q == 2 && k2.q > 2 { (k2, k1) } else { (k1, k2) };
    let (p, q, a, b) = (k1.p, k1.q, k2.p, k2.q);
    let case = match (q > 2, b > 2) {
        (true, true) if p * q == a * b => LemmaCase::II,
        (true, true) if p * q == -a * b => LemmaCase::III,
        (true, true) => LemmaCase::I,
        (true, false) if p * q == 2 * a => LemmaCase::V,
        (true, false) if p * q == -2 * a => LemmaCase::VI,
        (true, false) => LemmaCase::IV,
        _ if p == a => LemmaCase::VIII,
        _ if p == -a => LemmaCase::IX,
        _ => LemmaCase::VII,
    };
    (case, k1, k2)
}

/// The closed-form A-polynomial of `T(p,q) # T(a,b)`.
pub fn apoly_sum_lemma(k1: TorusKnotParam, k2: TorusKnotParam) -> (LemmaCase, APoly) {
    let (case, k1, k2) = classify_lemma(k1, k2);
    let (p, a) = (k1.p, k2.p);
    let s = k1.pq();
    let r = k2.pq();
    let one = BinomialFactor::of(0, 1);
    let f = BinomialFactor::of;
    let pair = BinomialFactor::pair;
    let mut v = vec![one];
    match case {
        LemmaCase::I => {
            v.extend(pair(s));
            v.extend(pair(r));
            v.extend(pair(s + r));
        }
        LemmaCase::II => {
            v.extend(pair(r));
            v.extend(pair(2 * r));
        }
        LemmaCase::III => {
            v.push(f(0, -1));
            v.extend(pair(-r));
            v.extend(pair(r));
        }
        LemmaCase::IV => {
            v.extend(pair(s));
            v.push(f(2 * a, -1));
            v.extend(pair(s + 2 * a));
        }
        LemmaCase::V => {
            v.extend(pair(2 * a));
            v.extend(pair(4 * a));
        }
        LemmaCase::VI => {
            v.push(f(0, -1));
            v.extend(pair(-2 * a));
            v.push(f(2 * a, -1));
        }
        LemmaCase::VII => {
            v.push(f(2 * p, -1));
            v.push(f(2 * a, -1));
            v.push(f(2 * p + 2 * a, 1));
        }
        LemmaCase::VIII => {
            v.push(f(2 * p, -1));
            v.push(f(4 * p, 1));
        }
        LemmaCase::IX => {
            v.push(f(2 * p, -1));
            v.push(f(-2 * p, -1));
        }
    }
    (case, APoly::new(&v))
}

/// The A-polynomial of a knot expression, from the general product rule.
pub fn apoly_of(knot: &KnotExpr) -> APoly {
    match knot {
        KnotExpr::Unknot => apoly_unknot(),
        KnotExpr::Torus(k) => apoly_torus(*k),
        KnotExpr::Sum(a, b) => apoly_sum_general(&apoly_torus(*a), &apoly_torus(*b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tk(p: i64, q: i64) -> TorusKnotParam {
        TorusKnotParam::new(p, q).unwrap()
    }

    #[test]
    fn torus_knots() {
        assert_eq!(apoly_torus(tk(3, 2)).to_string(), "(L - 1)*(M^6*L + 1)");
        let a = apoly_torus(tk(5, 3)).expansion();
        assert_eq!(format_ml(&a), "M^30*L^3 - M^30*L^2 - L + 1");
        let b = apoly_torus(tk(-5, 3)).normalized();
        assert_eq!(
            b,
            unit_normalize(&crate::algebra::ZPoly::from_terms([
                ((3, -30), BigInt::from(1)),
                ((2, -30), BigInt::from(-1)),
                ((1, 0), BigInt::from(-1)),
                ((0, 0), BigInt::from(1)),
            ]))
        );
    }

    #[test]
    fn dedupe() {
        let x = BinomialFactor::of(2, 1);
        let y = BinomialFactor::of(2, -1);
        assert_eq!(squarefree_binomials(&[x, x]), vec![x]);
        assert_eq!(squarefree_binomials(&[x, y]), vec![x, y]);
    }

    #[test]
    fn equal_products_collapse_to_five() {
        let k = tk(12, 5);
        let m = tk(20, 3);
        let g = apoly_sum_general(&apoly_torus(k), &apoly_torus(m));
        assert_eq!(g.factors().len(), 5);
        let (case, l) = apoly_sum_lemma(k, m);
        assert_eq!(case, LemmaCase::II);
        assert_eq!(g.sorted_factors(), l.sorted_factors());
    }

    #[test]
    fn unknot_is_neutral() {
        let a = apoly_torus(tk(7, 4));
        assert_eq!(apoly_sum_general(&a, &apoly_unknot()).sorted_factors(), a.sorted_factors());
    }

    #[test]
    fn bad_delta_is_rejected() {
        assert!(BinomialFactor::new(3, 2).is_err());
    }
}
