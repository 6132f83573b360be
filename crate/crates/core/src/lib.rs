//! Orthogonal polynomials, Hankel determinants, and Painleve-type structure
//! for the perturbed Gaussian weight
//!
//! ```text
//! w(x; t) = exp(-x^2) * (1 + t x^2)^lambda,    x in R,  t > 0,  lambda real.
//! ```
//!
//! The crate builds the monic orthogonal polynomial system of this weight in
//! arbitrary precision and exposes the quantities that carry its integrable
//! structure: recurrence coefficients `beta_n`, sub-leading coefficients
//! `p(n, t)`, Hankel determinants `D_n`, the ladder-operator auxiliary
//! quantities `r_n`, `R_n` and the log-derivative `H_n`.  On top of the
//! tables sit three layers:
//!
//! * **verification** - finite-`n` identities, difference equations in `n`,
//!   differential equations in `t` (including a Painleve V reduction and a
//!   Jimbo-Miwa-Okamoto sigma-form) checked numerically with residual
//!   reports;
//! * **asymptotics** - the equilibrium-measure (Coulomb fluid) description
//!   at large `n`, asymptotic series for `beta_n`, `p(n,t)`, `H_n`,
//!   `ln D_n`, the endpoint `b^2`, and free energy, plus a numerical fit of
//!   the two constants the `ln D_n` expansion leaves undetermined;
//! * **a Laguerre bridge** - the classical even/odd decomposition relating
//!   this symmetric weight to two half-line weights, used as an independent
//!   cross-check on norms, determinants and auxiliary quantities.
//!
//! All arithmetic is MPFR-backed via [`rug`]; see
//! [`numerics::NumericContext`] for the precision/tolerance model.

pub mod asymptotics;
pub mod error;
pub mod laguerre;
pub mod moments;
pub mod numerics;
pub mod ortho;
pub mod verify;

pub use error::{Error, Result};

// Re-exported so downstream callers use the same MPFR binding (and version)
// as the library itself.
pub use rug;
