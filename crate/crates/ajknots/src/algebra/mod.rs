//! Exact arithmetic: integer and rational Laurent polynomials in `t` and
//! `M`, reduced rational functions, substitutions and limits at `t = -1`.

pub mod gcd;
pub mod laurent;
pub mod limit;
pub(crate) mod modp;
pub mod ratfunc;
pub mod text;
pub mod zpoly;

pub use gcd::{gcd, gcd_cofactors};
pub use laurent::{BivariateLaurent, UnivariateLaurent};
pub use limit::{limit_at_t_minus1, Limit, LimitSummary};
pub use ratfunc::{RationalFunction, UnivariateFraction};
pub use text::{parse_bivariate, parse_rational, parse_univariate};
pub use zpoly::{Exp, ZPoly};
