//! Exact symbolic computation for the AJ conjecture on connected sums of
//! two torus knots.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: integer and rational Laurent polynomials in `t` and `M`,
//!   reduced rational functions, the substitution `M -> t^{2j} M`,
//!   evaluation at `M = t^{2n}` and limits at `t = -1`.
//! * [`torus`]: the extended quantum torus, skew Laurent polynomials in
//!   `L` over `Q(t, M)` with `L M = t^2 M L`, acting on sequences.
//! * [`jones`]: colored Jones polynomials of torus knots and of their
//!   connected sums, the quantum integers and the `δ` function.
//! * [`apoly`]: A-polynomials of torus knots and connected sums.
//! * [`annihilator`]: the seven candidate recurrence operators, their
//!   annihilation checks, evaluation at `t = -1`, minimality certificates
//!   and the brute-force ansatz scan.
//! * [`suite`]: the acceptance checks shared by the test target and the
//!   command line tool.

pub mod algebra;
pub mod annihilator;
pub mod apoly;
pub mod error;
pub mod jones;
pub mod linalg;
pub mod suite;
pub mod torus;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/jones.md")]
    mod jones {}
    #[doc = include_str!("../../../book/src/apoly.md")]
    mod apoly {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
}
