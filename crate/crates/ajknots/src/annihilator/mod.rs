//! Candidate recurrence operators for `T(p,q) # T(a,b)` with `p` and `a`
//! of the same sign, their verification and their comparison with the
//! A-polynomial.
//!
//! The seven parameter patterns ([`CaseId`]) each have an explicit
//! operator built as a product of low-degree factors. The pipeline is
//!
//! 1. [`classify`] and [`build_candidate`],
//! 2. [`check_annihilation`] on a range of colors,
//! 3. [`evaluate_and_compare`] at `t = -1` against the A-polynomial,
//! 4. [`minimality_certificate`] and [`minimality_scan`] as evidence that
//!    no operator of smaller `L`-degree exists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::jones::{KnotExpr, TorusKnotParam};
use crate::torus::SkewOperator;

mod cases;
mod certificate;
mod check;
mod compare;
mod scan;

pub use cases::{build_candidate, ratio_limit_witness};
pub use certificate::{certificate_entries, minimality_certificate, CertificateEntry, MinimalityCertificate};
pub use check::{check_annihilation, check_operator, AnnihilationReport, CollapsePolicy};
pub use compare::{evaluate_and_compare, factor_binomials, AJReport, FactorEntry};
pub use scan::{minimality_scan, ScanReport, ScanWindow};

/// The seven same-sign parameter patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    /// `q, b > 2` and `pq ≠ ab`.
    C3,
    /// `(a, b) = (p, q)` with `q > 2`.
    C4,
    /// `q, b > 2`, `pq = ab` and `p ≠ a`.
    C5,
    /// `q > 2`, `b = 2` and `pq ≠ 2a`.
    C6,
    /// `q > 2`, `b = 2` and `pq = 2a`.
    C7,
    /// `q = b = 2` and `p ≠ a`.
    C8,
    /// `q = b = 2` and `p = a`.
    C9,
}

impl CaseId {
    pub const ALL: [CaseId; 7] =
        [CaseId::C3, CaseId::C4, CaseId::C5, CaseId::C6, CaseId::C7, CaseId::C8, CaseId::C9];

    /// The `L`-degree of the candidate operator.
    pub fn expected_l_degree(self) -> i64 {
        match self {
            CaseId::C3 => 7,
            CaseId::C4 => 5,
            CaseId::C5 => 7,
            CaseId::C6 => 6,
            CaseId::C7 => 6,
            CaseId::C8 => 4,
            CaseId::C9 => 3,
        }
    }

    /// True for the patterns whose operator has repeated factors at
    /// `t = -1`.
    pub fn has_repeated_factor(self) -> bool {
        matches!(self, CaseId::C5 | CaseId::C7)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The summands of a connected sum in the order used by the
/// constructions: when exactly one of `q, b` equals 2, the knot with
/// `q > 2` comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
}

impl CaseParams {
    pub fn knots(&self) -> (TorusKnotParam, TorusKnotParam) {
        (TorusKnotParam { p: self.p, q: self.q }, TorusKnotParam { p: self.a, q: self.b })
    }

    pub fn knot(&self) -> KnotExpr {
        let (k1, k2) = self.knots();
        KnotExpr::Sum(k1, k2)
    }
}

/// Determines the pattern of `k1 # k2` and orders the summands.
pub fn classify(k1: TorusKnotParam, k2: TorusKnotParam) -> Result<(CaseId, CaseParams)> {
    for k in [k1, k2] {
        TorusKnotParam::new(k.p, k.q)?;
    }
    if k1.p.signum() != k2.p.signum() {
        return Err(Error::OppositeSigns(k1.p, k1.q, k2.p, k2.q));
    }
    let (k1, k2) = if k1.q == 2 && k2.q > 2 { (k2, k1) } else { (k1, k2) };
    let params = CaseParams { p: k1.p, q: k1.q, a: k2.p, b: k2.q };
    let (p, q, a, b) = (k1.p, k1.q, k2.p, k2.q);
    let case = match (q > 2, b > 2) {
        (true, true) if (p, q) == (a, b) => CaseId::C4,
        (true, true) if p * q == a * b => CaseId::C5,
        (true, true) => CaseId::C3,
        (true, false) if p * q == 2 * a => CaseId::C7,
        (true, false) => CaseId::C6,
        _ if p == a => CaseId::C9,
        _ => CaseId::C8,
    };
    Ok((case, params))
}

/// A candidate operator together with the auxiliary functions used to
/// build it.
#[derive(Clone, Debug)]
pub struct CandidateAnnihilator {
    pub case: CaseId,
    pub params: CaseParams,
    pub operator: SkewOperator,
    pub aux: BTreeMap<String, RationalFunction>,
    pub expected_l_degree: i64,
}
