//! Large-`n` description of the polynomial system: the equilibrium-measure
//! (Coulomb fluid) picture, asymptotic series for the recurrence data, and
//! a numerical fit of the two constants the `ln D_n` expansion leaves free.
//!
//! For the external potential `v(x) = x^2 - lambda ln(1 + t x^2)` the
//! equilibrium density is supported on one interval `(-b, b)` precisely when
//! `lambda t <= 1`; every routine here refuses parameters outside that
//! region.  The endpoint solves
//!
//! ```text
//! b^2 - 2 lambda + 2 lambda / sqrt(1 + b^2 t) = 2n,
//! ```
//!
//! and the density is
//!
//! ```text
//! sigma(x) = sqrt(b^2 - x^2)/pi *
//!            [1 - lambda t / (sqrt(1 + b^2 t) (1 + t x^2))].
//! ```
//!
//! [`series_eval`] evaluates the truncated asymptotic expansions (endpoint,
//! Lagrange multiplier, free energy, `beta_n`, `p(n,t)`, `H_n`) exactly as
//! printed, with coefficients built from integer rationals in `lambda` and
//! `sqrt t` at call time.  [`log_d_series`] does the same for `ln D_n`,
//! which carries two weight-dependent integration constants; [`fit_constants`]
//! recovers them from computed determinants by Richardson extrapolation.

mod equilibrium;
mod fit;
mod series;

pub use equilibrium::{solve_endpoint, EquilibriumMeasure};
pub use fit::{fit_constants, FitResult};
pub use series::{log_d_series, series_eval, SeriesKind};

use crate::error::{Error, Result};
use crate::moments::WeightParams;
use rug::Float;

/// Reject parameters outside the one-cut region `lambda t <= 1`.
pub(crate) fn require_one_cut(params: &WeightParams) -> Result<()> {
    let prec = params.t().prec();
    let product = Float::with_val(prec, params.lambda() * params.t());
    if product > 1u32 {
        return Err(Error::OneCut(format!(
            "lambda * t = {} exceeds 1: the equilibrium measure splits off \
             a second support interval and the one-cut formulas do not apply",
            product.to_string_radix(10, Some(12))
        )));
    }
    Ok(())
}
