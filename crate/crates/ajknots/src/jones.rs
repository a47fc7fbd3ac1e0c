//! Colored Jones polynomials of torus knots and of connected sums of two
//! torus knots, the quantum integers `[n]` and the function `δ(p, q, n)`.
//!
//! Torus-knot values come from the recurrences
//!
//! * `q = 2`: `J(n+1) = -t^{-4pn-2p} J(n) + t^{-2pn} [2n+1]`,
//! * `q > 2`: `J(n+2) = t^{-4pq(n+1)} J(n) + t^{-2pq(n+1)} δ(p, q, n)`,
//!
//! started from `J(0) = 0` and `J(1) = 1` and extended by `J(-n) = -J(n)`.
//! A connected sum has `J_{K1#K2}(n) = J_{K1}(n) J_{K2}(n) / [n]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{BivariateLaurent, RationalFunction, UnivariateLaurent, ZPoly};
use crate::error::{Error, Result};
use crate::torus::Sequence;

/// Parameters `(p, q)` of a torus knot with `gcd(|p|, q) = 1` and
/// `|p| > q >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnotParam {
    pub p: i64,
    pub q: i64,
}

impl TorusKnotParam {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 2 || p.abs() <= q {
            return Err(Error::InvalidParams(format!("T({p},{q}) needs |p| > q >= 2")));
        }
        if p.abs().gcd(&q) != 1 {
            return Err(Error::InvalidParams(format!("T({p},{q}) needs coprime p and q")));
        }
        Ok(TorusKnotParam { p, q })
    }

    /// The product `pq`.
    pub fn pq(&self) -> i64 {
        self.p * self.q
    }
}

impl fmt::Display for TorusKnotParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// The knots handled by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KnotExpr {
    Unknot,
    Torus(TorusKnotParam),
    Sum(TorusKnotParam, TorusKnotParam),
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus(k) => write!(f, "{k}"),
            KnotExpr::Sum(a, b) => write!(f, "{a}#{b}"),
        }
    }
}

fn parse_torus(s: &str) -> Result<TorusKnotParam> {
    let bad = || Error::Parse(format!("expected T(p,q), found '{s}'"));
    let inner = s
        .trim()
        .strip_prefix('T')
        .and_then(|r| r.trim_start().strip_prefix('('))
        .and_then(|r| r.trim_end().strip_suffix(')'))
        .ok_or_else(bad)?;
    let (p, q) = inner.split_once(',').ok_or_else(bad)?;
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    TorusKnotParam::new(p, q).map_err(|e| Error::Parse(e.to_string()))
}

impl FromStr for KnotExpr {
    type Err = Error;

    /// Accepts `U`, `T(p,q)` and `T(p,q)#T(a,b)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "U" {
            return Ok(KnotExpr::Unknot);
        }
        match s.split_once('#') {
            Some((a, b)) => Ok(KnotExpr::Sum(parse_torus(a)?, parse_torus(b)?)),
            None => Ok(KnotExpr::Torus(parse_torus(s)?)),
        }
    }
}

fn t_minus_inverse(e: i64) -> UnivariateLaurent {
    UnivariateLaurent::from_int_terms([(e, 1), (-e, -1)])
}

/// The quantum integer `[n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2})`.
pub fn bracket(n: i64) -> UnivariateLaurent {
    t_minus_inverse(2 * n).div_exact(&t_minus_inverse(2)).expect("t^2 - t^-2 divides t^{2n} - t^{-2n}")
}

/// `δ(p, q, n)` as a Laurent polynomial in `t`.
pub fn delta_value(p: i64, q: i64, n: i64) -> UnivariateLaurent {
    let s = (p + q) * (n + 1);
    let d = (q - p) * (n + 1);
    let num = UnivariateLaurent::from_int_terms([
        (2 * s + 2, 1),
        (-2 * s + 2, 1),
        (2 * d - 2, -1),
        (-2 * d - 2, -1),
    ]);
    num.div_exact(&t_minus_inverse(2)).expect("t^2 - t^-2 divides the numerator of δ")
}

/// `t^2 - t^{-2}` as a rational function.
pub fn quantum_difference() -> RationalFunction {
    int_laurent(&[((2, 0), 1), ((-2, 0), -1)])
}

/// A Laurent polynomial in `t` and `M` with integer coefficients, given as
/// `((t-exponent, M-exponent), coefficient)` terms.
pub fn int_laurent(terms: &[((i64, i64), i64)]) -> RationalFunction {
    let z = ZPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))));
    RationalFunction::from_laurent(&BivariateLaurent::from_zpoly(z))
}

/// `(M^k t^{2j} - M^{-k} t^{-2j}) / (t^2 - t^{-2})`.
fn symbolic_bracket(k: i64, j: i64) -> RationalFunction {
    &int_laurent(&[((2 * j, k), 1), ((-2 * j, -k), -1)]) / &quantum_difference()
}

/// `[n + j]` written in `t` and `M = t^{2n}`.
pub fn bracket_symbolic(j: i64) -> RationalFunction {
    symbolic_bracket(1, j)
}

/// `[2n + j]` written in `t` and `M = t^{2n}`.
pub fn bracket2_symbolic(j: i64) -> RationalFunction {
    symbolic_bracket(2, j)
}

/// `δ(p, q, n + j)` written in `t` and `M = t^{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaSpec {
    pub p: i64,
    pub q: i64,
    pub j: i64,
}

impl DeltaSpec {
    pub fn new(p: i64, q: i64, j: i64) -> Self {
        DeltaSpec { p, q, j }
    }

    pub fn to_rational(&self) -> RationalFunction {
        let (p, q) = (self.p, self.q);
        let num = int_laurent(&[
            ((2 * (p + q + 1), p + q), 1),
            ((-2 * (p + q - 1), -p - q), 1),
            ((2 * (q - p - 1), q - p), -1),
            ((-2 * (q - p + 1), p - q), -1),
        ]);
        (&num / &quantum_difference()).shift_m(self.j)
    }
}

/// Forward-filled values `J(0), J(1), ...` of one torus knot.
#[derive(Debug)]
struct TorusChain {
    knot: TorusKnotParam,
    values: Mutex<Vec<UnivariateLaurent>>,
}

impl TorusChain {
    fn new(knot: TorusKnotParam) -> Self {
        let base = vec![UnivariateLaurent::zero(), UnivariateLaurent::one()];
        TorusChain { knot, values: Mutex::new(base) }
    }

    fn get(&self, n: i64) -> UnivariateLaurent {
        if n < 0 {
            return -&self.get(-n);
        }
        let n = n as usize;
        let mut values = self.values.lock().expect("jones cache lock");
        let TorusKnotParam { p, q } = self.knot;
        while values.len() <= n {
            let next = values.len() as i64;
            let v = if q == 2 {
                let m = next - 1;
                let prev = &values[m as usize];
                &bracket(2 * m + 1).mul_t_power(-2 * p * m) - &prev.mul_t_power(-4 * p * m - 2 * p)
            } else {
                let m = next - 2;
                let prev = &values[m as usize];
                let e = p * q * (m + 1);
                &prev.mul_t_power(-4 * e) + &delta_value(p, q, m).mul_t_power(-2 * e)
            };
            values.push(v);
        }
        values[n].clone()
    }
}

/// The colored Jones polynomial of a torus knot.
pub fn jones_torus(k: TorusKnotParam, n: i64) -> UnivariateLaurent {
    TorusChain::new(k).get(n)
}

/// The colored Jones polynomial of `T(p,q) # T(a,b)`.
pub fn jones_connected_sum(k1: TorusKnotParam, k2: TorusKnotParam, n: i64) -> Result<UnivariateLaurent> {
    sum_value(&jones_torus(k1, n), &jones_torus(k2, n), n)
}

fn sum_value(j1: &UnivariateLaurent, j2: &UnivariateLaurent, n: i64) -> Result<UnivariateLaurent> {
    if n == 0 {
        return Ok(UnivariateLaurent::zero());
    }
    (j1 * j2)
        .div_exact(&bracket(n))
        .ok_or_else(|| Error::InexactDivision(format!("[{n}] does not divide J1({n}) J2({n})")))
}

#[derive(Debug)]
enum Source {
    Unknot,
    Torus(TorusChain),
    Sum(TorusChain, TorusChain, Mutex<Vec<Option<UnivariateLaurent>>>),
}

/// The colored Jones sequence of a knot with memoized values.
///
/// The caches sit behind mutexes, so one sequence can be shared between
/// threads.
#[derive(Debug)]
pub struct JonesSequence {
    knot: KnotExpr,
    source: Source,
}

impl JonesSequence {
    pub fn new(knot: KnotExpr) -> Self {
        let source = match knot {
            KnotExpr::Unknot => Source::Unknot,
            KnotExpr::Torus(k) => Source::Torus(TorusChain::new(k)),
            KnotExpr::Sum(a, b) => {
                Source::Sum(TorusChain::new(a), TorusChain::new(b), Mutex::new(Vec::new()))
            }
        };
        JonesSequence { knot, source }
    }

    pub fn knot(&self) -> KnotExpr {
        self.knot
    }

    /// `J(n)`, failing only if the connected-sum division is inexact.
    pub fn try_value(&self, n: i64) -> Result<UnivariateLaurent> {
        match &self.source {
            Source::Unknot => Ok(bracket(n)),
            Source::Torus(c) => Ok(c.get(n)),
            Source::Sum(a, b, cache) => {
                if n < 0 {
                    return Ok(-&self.try_value(-n)?);
                }
                let idx = n as usize;
                if let Some(Some(v)) = cache.lock().expect("jones cache lock").get(idx) {
                    return Ok(v.clone());
                }
                let v = sum_value(&a.get(n), &b.get(n), n)?;
                let mut c = cache.lock().expect("jones cache lock");
                if c.len() <= idx {
                    c.resize(idx + 1, None);
                }
                c[idx] = Some(v.clone());
                Ok(v)
            }
        }
    }

    /// `J(n)`.
    pub fn value(&self, n: i64) -> UnivariateLaurent {
        self.try_value(n).expect("[n] divides J1(n) J2(n)")
    }

    /// Stores a precomputed `J(n)` for `n >= 1`, for instance from a disk
    /// cache. A torus-knot value is kept only when it extends the values
    /// already known without a gap; unknot values are never stored.
    pub fn seed(&self, n: i64, v: UnivariateLaurent) {
        if n < 1 {
            return;
        }
        match &self.source {
            Source::Unknot => {}
            Source::Torus(c) => {
                let mut values = c.values.lock().expect("jones cache lock");
                if values.len() == n as usize {
                    values.push(v);
                }
            }
            Source::Sum(_, _, cache) => {
                let mut c = cache.lock().expect("jones cache lock");
                let idx = n as usize;
                if c.len() <= idx {
                    c.resize(idx + 1, None);
                }
                c[idx] = Some(v);
            }
        }
    }

    /// The values `J(n)` with `n >= 1` computed so far, by increasing `n`.
    pub fn known_values(&self) -> Vec<(i64, UnivariateLaurent)> {
        match &self.source {
            Source::Unknot => Vec::new(),
            Source::Torus(c) => {
                let values = c.values.lock().expect("jones cache lock");
                values.iter().enumerate().skip(1).map(|(n, v)| (n as i64, v.clone())).collect()
            }
            Source::Sum(_, _, cache) => {
                let c = cache.lock().expect("jones cache lock");
                c.iter()
                    .enumerate()
                    .skip(1)
                    .filter_map(|(n, v)| v.as_ref().map(|v| (n as i64, v.clone())))
                    .collect()
            }
        }
    }
}

impl Sequence for JonesSequence {
    fn term(&self, n: i64) -> UnivariateLaurent {
        self.value(n)
    }
}

fn torus_degrees(k: TorusKnotParam, n: i64) -> (i64, i64) {
    let TorusKnotParam { p, q } = k;
    let even = n.rem_euclid(2) == 0;
    let a = n.abs();
    if p > q {
        let lo = -p * q * n * n + p * q + if even { (p - 2) * (q - 2) } else { 0 };
        let hi = 2 * (p + q - p * q) * a + 2 * (p * q - p - q);
        (lo, hi)
    } else {
        let lo = 2 * (p - q - p * q) * a + 2 * (p * q - p + q);
        let hi = -p * q * n * n + p * q + if even { (p + 2) * (q - 2) } else { 0 };
        (lo, hi)
    }
}

/// Predicted lowest and highest `t`-degrees.
///
/// For a torus knot these are the degrees of `J(n)`; for the unknot the
/// degrees of `[n]`; for a connected sum the degrees of `[n] J_{K1#K2}(n)`,
/// which are the sums of the degrees of the two torus-knot factors. The
/// sign pattern with `p < -q` and `a > b` is the mirror ordering of the
/// pattern `p > q`, `a < -b` and is handled by symmetry.
pub fn degree_bounds(k: &KnotExpr, n: i64) -> Result<(i64, i64)> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("degree formulas need n >= 1, got {n}")));
    }
    Ok(match k {
        KnotExpr::Unknot => (-2 * (n - 1), 2 * (n - 1)),
        KnotExpr::Torus(t) => torus_degrees(*t, n),
        KnotExpr::Sum(a, b) => {
            let (l1, h1) = torus_degrees(*a, n);
            let (l2, h2) = torus_degrees(*b, n);
            (l1 + l2, h1 + h2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tk(p: i64, q: i64) -> TorusKnotParam {
        TorusKnotParam::new(p, q).unwrap()
    }

    #[test]
    fn small_brackets() {
        assert!(bracket(0).is_zero());
        assert!(bracket(1).is_one());
        assert_eq!(bracket(3), UnivariateLaurent::from_int_terms([(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(bracket(-3), -&bracket(3));
    }

    #[test]
    fn trefoil_second_color() {
        let want = UnivariateLaurent::from_int_terms([(-18, -1), (-10, 1), (-6, 1), (-2, 1)]);
        assert_eq!(jones_torus(tk(3, 2), 2), want);
    }

    #[test]
    fn jones_second_color_for_q_above_two() {
        let j = jones_torus(tk(5, 3), 2);
        assert_eq!(j, delta_value(5, 3, 0).mul_t_power(-30));
        assert_eq!(j.lowest_degree().unwrap(), -42);
    }

    #[test]
    fn delta_at_zero() {
        let num = UnivariateLaurent::from_int_terms([(18, 1), (-14, 1), (-6, -1), (2, -1)]);
        assert_eq!(&delta_value(5, 3, 0) * &t_minus_inverse(2), num);
    }

    #[test]
    fn parse_knots() {
        assert_eq!("U".parse::<KnotExpr>().unwrap(), KnotExpr::Unknot);
        assert_eq!("T(3,2)".parse::<KnotExpr>().unwrap(), KnotExpr::Torus(tk(3, 2)));
        assert_eq!("T(5, 3) # T(-4,3)".parse::<KnotExpr>().unwrap(), KnotExpr::Sum(tk(5, 3), tk(-4, 3)));
        assert!("T(2,3)".parse::<KnotExpr>().is_err());
        assert!("T(6,4)".parse::<KnotExpr>().is_err());
        assert!("T(3,2".parse::<KnotExpr>().is_err());
        let k: KnotExpr = "T(12,5)#T(20,3)".parse().unwrap();
        assert_eq!(k.to_string().parse::<KnotExpr>().unwrap(), k);
    }

    #[test]
    fn seeded_values_are_returned() {
        let k = KnotExpr::Sum(tk(3, 2), tk(5, 2));
        let fresh = JonesSequence::new(k);
        let want = fresh.value(3);
        let seeded = JonesSequence::new(k);
        seeded.seed(3, want.clone());
        assert_eq!(seeded.known_values(), vec![(3, want)]);
        let t = JonesSequence::new(KnotExpr::Torus(tk(3, 2)));
        t.seed(3, UnivariateLaurent::one());
        assert_eq!(t.known_values().len(), 1);
        t.seed(2, UnivariateLaurent::one());
        assert_eq!(t.value(2), UnivariateLaurent::one());
    }

    #[test]
    fn sum_base_values() {
        let s = JonesSequence::new(KnotExpr::Sum(tk(3, 2), tk(5, 2)));
        assert!(s.value(0).is_zero());
        assert!(s.value(1).is_one());
        assert_eq!(s.value(-2), -&s.value(2));
    }
}
