//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot invert the zero rational function")]
    ZeroInversion,
    #[error("denominator vanishes identically after substituting M = t^(2n) at n = {n}")]
    DenominatorCollapse { n: i64 },
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("operation undefined on the zero operator")]
    ZeroOperator,
    #[error("coefficient of L^{l_exponent} has a pole at t = -1")]
    PoleAtMinusOne { l_exponent: i64 },
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("no degree formula for this sign pattern: {0}")]
    UnsupportedSignPattern(String),
    #[error("factor is not of the form L*M^r - delta: {0}")]
    NonBinomialInput(String),
    #[error("T({0},{1}) and T({2},{3}) have opposite signs; no annihilator construction applies")]
    OppositeSigns(i64, i64, i64, i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("auxiliary function {0} vanishes identically")]
    AuxVanishes(String),
    #[error("parameters do not belong to case {0}")]
    CaseMismatch(String),
    #[error("leading coefficient vanishes at t = -1")]
    DegreeDrop,
    #[error("squarefree part differs from the A-polynomial: {0}")]
    MismatchWithAPoly(String),
    #[error("minimality certificate failed: {0}")]
    CertificateFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
