//! Extraction of the two integration constants in the `ln D_n` expansion.
//!
//! The large-`n` expansion of `ln D_n` is known in closed form except for
//! two constants: the coefficient `c1` of the linear term `n c1` and the
//! additive constant `c0`.  Writing `g(n) = ln D_n - S_0(n)`, where
//! `S_0` is the expansion with both constants set to zero, leaves
//!
//! ```text
//! g(n) = c1 n + c0 + O(n^-2).
//! ```
//!
//! Consecutive difference quotients of `g` on an ascending grid kill `c0`
//! exactly and carry an `O(m^-3)` correction at the interval midpoint `m`;
//! one Richardson step on the last two quotients removes that correction
//! and yields `c1`.  Substituting back gives per-point candidates
//! `g(n) - c1 n = c0 + O(n^-2)`, and a second Richardson step in `n^-2`
//! yields `c0`.  At the Gaussian point `lambda = 0` the constants are
//! `ln(2 pi)` and `zeta'(-1)`; for general `lambda` they are the output of
//! this fit.

use super::require_one_cut;
use super::series::log_d_series;
use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::numerics::NumericContext;
use crate::ortho::{build_ortho_table, policy_context};
use rug::Float;

/// Outcome of [`fit_constants`]: the two fitted constants with crude error
/// estimates from the final Richardson steps.
#[derive(Debug, Clone)]
pub struct FitResult {
    /// Coefficient of the linear term `n c1` in the `ln D_n` expansion.
    pub c_tilde_1: Float,
    /// Additive constant of the `ln D_n` expansion.
    pub c_tilde_0: Float,
    /// Estimate of the error in `c_tilde_1` (distance from the last
    /// unextrapolated quotient).
    pub c1_error: Float,
    /// Estimate of the error in `c_tilde_0`.
    pub c0_error: Float,
    /// Grid of polynomial degrees the fit used.
    pub grid: Vec<usize>,
    /// Working precision of the underlying table.
    pub precision_bits: u32,
}

/// Fit the two constants of the `ln D_n` expansion from exact finite-`n`
/// determinants on `n_grid`.
///
/// The grid must be strictly increasing with at least three entries, the
/// first at least 2; larger final entries give better-converged constants.
/// One orthogonality table is built at the size of the last entry (at the
/// default precision policy for that size, if the supplied context is
/// lower), so the cost is one table build plus negligible arithmetic.
pub fn fit_constants(
    params: &WeightParams,
    n_grid: &[usize],
    ctx: &NumericContext,
) -> Result<FitResult> {
    require_one_cut(params)?;
    if n_grid.len() < 3 {
        return Err(Error::Config(format!(
            "constant fitting needs at least three grid degrees, got {}",
            n_grid.len()
        )));
    }
    if n_grid[0] < 2 {
        return Err(Error::Config(format!(
            "fit grid must start at degree 2 or higher, got {}",
            n_grid[0]
        )));
    }
    if n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(
            "fit grid degrees must be strictly increasing".into(),
        ));
    }

    let n_max = *n_grid.last().expect("grid nonempty");
    let pc = policy_context(n_max, ctx)?;
    let prec = pc.precision_bits();
    let table = build_ortho_table(n_max, params, &pc)?;
    let zero = Float::with_val(prec, 0u32);

    // g(n) = ln D_n - S_0(n) = c1 n + c0 + O(n^-2).
    let mut g = Vec::with_capacity(n_grid.len());
    for &k in n_grid {
        let nf = Float::with_val(prec, k as u64);
        let series0 = log_d_series(&nf, params, &zero, &zero, &pc)?;
        let mut gi = Float::with_val(prec, table.log_d(k)?);
        gi -= &series0;
        g.push(gi);
    }

    // Difference quotients over the last two intervals, attached to the
    // interval midpoints.
    let len = n_grid.len();
    let quot = |i: usize, j: usize| -> (Float, Float) {
        let mut d = Float::with_val(prec, &g[j] - &g[i]);
        d /= Float::with_val(prec, (n_grid[j] - n_grid[i]) as u64);
        let mut m = Float::with_val(prec, (n_grid[i] + n_grid[j]) as u64);
        m /= 2u32;
        (d, m)
    };
    let (d_a, m_a) = quot(len - 3, len - 2);
    let (d_b, m_b) = quot(len - 2, len - 1);

    // Richardson in m^-3: the quotient behaves as c1 + u m^-3.
    let ma3 = Float::with_val(prec, m_a.square_ref()) * &m_a;
    let mb3 = Float::with_val(prec, m_b.square_ref()) * &m_b;
    let mut num = Float::with_val(prec, &d_b * &mb3);
    num -= Float::with_val(prec, &d_a * &ma3);
    let den = Float::with_val(prec, &mb3 - &ma3);
    let c1 = Float::with_val(prec, &num / &den);
    let c1_error = Float::with_val(prec, &c1 - &d_b).abs();

    // Per-point constant candidates at the last two degrees, then a
    // Richardson step in n^-2.
    let cand = |i: usize| -> (Float, Float) {
        let nf = Float::with_val(prec, n_grid[i] as u64);
        let mut c = Float::with_val(prec, &c1 * &nf);
        c = Float::with_val(prec, &g[i] - c);
        (c, nf)
    };
    let (c0_a, n_a) = cand(len - 2);
    let (c0_b, n_b) = cand(len - 1);
    let na2 = Float::with_val(prec, n_a.square_ref());
    let nb2 = Float::with_val(prec, n_b.square_ref());
    let mut num = Float::with_val(prec, &c0_b * &nb2);
    num -= Float::with_val(prec, &c0_a * &na2);
    let den = Float::with_val(prec, &nb2 - &na2);
    let c0 = Float::with_val(prec, &num / &den);
    let mut c0_error = Float::with_val(prec, &c0 - &c0_b).abs();
    c0_error += Float::with_val(prec, &n_b * &c1_error);

    Ok(FitResult {
        c_tilde_1: c1,
        c_tilde_0: c0,
        c1_error,
        c0_error,
        grid: n_grid.to_vec(),
        precision_bits: prec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(t: f64, lam: f64) -> (NumericContext, WeightParams) {
        let ctx = NumericContext::new(512).unwrap();
        let params = WeightParams::new(ctx.float(t), ctx.float(lam)).unwrap();
        (ctx, params)
    }

    #[test]
    fn gaussian_constants_are_recovered() {
        let (ctx, params) = setup(0.7, 0.0);
        let fit = fit_constants(&params, &[40, 44, 48], &ctx).unwrap();
        let two_pi = Float::with_val(512, rug::float::Constant::Pi) * 2u32;
        let want_c1 = two_pi.ln();
        let want_c0 =
            Float::with_val(512, Float::parse("-0.1654211437004509").unwrap());
        let d1 = Float::with_val(512, &fit.c_tilde_1 - &want_c1).abs();
        let d0 = Float::with_val(512, &fit.c_tilde_0 - &want_c0).abs();
        assert!(d1 < 1e-6, "c1 error {d1}");
        assert!(d0 < 1e-4, "c0 error {d0}");
        assert!(fit.c1_error.is_finite() && fit.c1_error.cmp0().is_some());
        assert!(fit.c0_error < 1e-3, "estimate {}", fit.c0_error);
    }

    #[test]
    fn malformed_grids_are_rejected() {
        let (ctx, params) = setup(0.5, 0.3);
        assert!(matches!(
            fit_constants(&params, &[10, 12], &ctx),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            fit_constants(&params, &[10, 12, 12], &ctx),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            fit_constants(&params, &[1, 5, 9], &ctx),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn two_cut_parameters_are_refused() {
        let (ctx, params) = setup(3.0, 0.5);
        assert!(matches!(
            fit_constants(&params, &[10, 12, 14], &ctx),
            Err(Error::OneCut(_))
        ));
    }
}
