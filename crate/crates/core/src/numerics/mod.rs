//! Arbitrary-precision numeric foundation.
//!
//! Everything downstream funnels through a [`NumericContext`]: working
//! precision in bits, the relative tolerance driving double-exponential
//! quadrature, and the step/order used by central finite differences.  All
//! real arithmetic is MPFR-backed ([`rug::Float`]) with round-to-nearest, so
//! for a fixed context every computation in this crate is deterministic.
//!
//! The module exposes four primitives:
//!
//! * [`gamma`] - Euler's gamma function with explicit pole detection,
//! * [`kummer_u`] - the confluent hypergeometric function of the second kind
//!   evaluated from its Laplace-type integral representation,
//! * [`integrate`] - double-exponential (tanh-sinh family) quadrature on a
//!   finite interval, the half-line or the whole real line,
//! * [`fd_derivative`] - second- and fourth-order central finite differences
//!   for first and second derivatives.

mod kummer;
mod quad;

pub use kummer::kummer_u;
pub use quad::{integrate, Domain};

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Order of accuracy of the central finite-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    /// Three-point stencils, error `O(h^2)`.
    Two,
    /// Five-point stencils, error `O(h^4)`.
    Four,
}

impl FdOrder {
    /// The accuracy order as an integer exponent.
    pub fn order(self) -> u32 {
        match self {
            FdOrder::Two => 2,
            FdOrder::Four => 4,
        }
    }
}

/// Which derivative [`fd_derivative`] approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Bundle of precision and tolerance settings shared by all numeric
/// operations.
///
/// Invariants enforced at construction:
///
/// * `precision_bits >= 128`;
/// * `quad_rel_tol >= 2^(16 - precision_bits)`, so the quadrature target is
///   achievable at the working precision;
/// * `fd_step^(fd_order + 1) > 2^(-precision_bits)`, so finite-difference
///   truncation error dominates roundoff and halving the step improves the
///   result.
#[derive(Debug, Clone)]
pub struct NumericContext {
    precision_bits: u32,
    quad_rel_tol: Float,
    fd_step: Float,
    fd_order: FdOrder,
}

impl NumericContext {
    /// Context with the standard profile: 512 bits, quadrature tolerance
    /// `1e-120`, finite-difference step `1e-25`, fourth-order stencils.
    pub fn standard() -> Self {
        // Unwraps are fine: the standard profile satisfies the invariants.
        let prec = 512;
        let tol = Float::with_val(prec, Float::parse("1e-120").unwrap());
        let step = Float::with_val(prec, Float::parse("1e-25").unwrap());
        Self::with_settings(prec, tol, step, FdOrder::Four).unwrap()
    }

    /// Context at `precision_bits` with tolerances scaled to the precision:
    /// quadrature tolerance `2^(40 - precision_bits)`, finite-difference step
    /// `1e-25`, fourth-order stencils.
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < 128 {
            return Err(Error::Config(format!(
                "precision_bits must be at least 128, got {precision_bits}"
            )));
        }
        let tol = Float::with_val(precision_bits, Float::i_exp(1, 40 - precision_bits as i32));
        let step = Float::with_val(precision_bits, Float::parse("1e-25").unwrap());
        Self::with_settings(precision_bits, tol, step, FdOrder::Four)
    }

    /// Fully explicit constructor; validates the context invariants.
    pub fn with_settings(
        precision_bits: u32,
        quad_rel_tol: Float,
        fd_step: Float,
        fd_order: FdOrder,
    ) -> Result<Self> {
        if precision_bits < 128 {
            return Err(Error::Config(format!(
                "precision_bits must be at least 128, got {precision_bits}"
            )));
        }
        if !(quad_rel_tol.is_finite() && quad_rel_tol.cmp0() == Some(std::cmp::Ordering::Greater)) {
            return Err(Error::Config("quad_rel_tol must be positive".into()));
        }
        let floor = Float::with_val(precision_bits, Float::i_exp(1, 16 - precision_bits as i32));
        if quad_rel_tol < floor {
            return Err(Error::Config(format!(
                "quad_rel_tol {} is below 2^(16-{precision_bits}), unachievable at this precision",
                quad_rel_tol.to_f64()
            )));
        }
        if !(fd_step.is_finite() && fd_step.cmp0() == Some(std::cmp::Ordering::Greater)) {
            return Err(Error::Config("fd_step must be positive".into()));
        }
        let pow = fd_order.order() + 1;
        let trunc = Float::with_val(precision_bits, (&fd_step).pow(pow));
        let eps = Float::with_val(precision_bits, Float::i_exp(1, -(precision_bits as i32)));
        if trunc <= eps {
            return Err(Error::Config(format!(
                "fd_step^{pow} must exceed 2^-{precision_bits}; truncation would not dominate roundoff"
            )));
        }
        Ok(Self {
            precision_bits,
            quad_rel_tol,
            fd_step,
            fd_order,
        })
    }

    /// Replace the quadrature tolerance (validating the invariants).
    pub fn with_quad_rel_tol(&self, tol: Float) -> Result<Self> {
        Self::with_settings(self.precision_bits, tol, self.fd_step.clone(), self.fd_order)
    }

    /// Replace the finite-difference step (validating the invariants).
    pub fn with_fd_step(&self, step: Float) -> Result<Self> {
        Self::with_settings(
            self.precision_bits,
            self.quad_rel_tol.clone(),
            step,
            self.fd_order,
        )
    }

    /// Replace the finite-difference order (validating the invariants).
    pub fn with_fd_order(&self, order: FdOrder) -> Result<Self> {
        Self::with_settings(
            self.precision_bits,
            self.quad_rel_tol.clone(),
            self.fd_step.clone(),
            order,
        )
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn quad_rel_tol(&self) -> &Float {
        &self.quad_rel_tol
    }

    pub fn fd_step(&self) -> &Float {
        &self.fd_step
    }

    pub fn fd_order(&self) -> FdOrder {
        self.fd_order
    }

    /// A new [`Float`] at this context's precision.
    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.precision_bits, value)
    }

    /// Pi at this context's precision.
    pub fn pi(&self) -> Float {
        Float::with_val(self.precision_bits, Constant::Pi)
    }

    /// Parse a decimal string at this context's precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s)
            .map_err(|e| Error::Config(format!("cannot parse {s:?} as a real number: {e}")))?;
        Ok(Float::with_val(self.precision_bits, parsed))
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        Self::standard()
    }
}

/// Euler's gamma function.
///
/// Errors with [`Error::Pole`] when `x` is a nonpositive integer; otherwise
/// delegates to the correctly rounded MPFR implementation at the context
/// precision.
pub fn gamma(x: &Float, ctx: &NumericContext) -> Result<Float> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument must be finite, got {x}")));
    }
    if x.is_integer() && x.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Pole(format!(
            "gamma has a pole at the nonpositive integer {x}"
        )));
    }
    let mut g = ctx.float(x);
    g.gamma_mut();
    Ok(g)
}

/// Central finite-difference derivative of `f` at `x0`.
///
/// Uses the step and stencil order from `ctx`.  With a step `h` chosen per
/// the context invariant, truncation error `O(h^order)` dominates roundoff,
/// so halving the step is guaranteed to shrink the error.
pub fn fd_derivative<F>(
    mut f: F,
    x0: &Float,
    deriv: DerivOrder,
    ctx: &NumericContext,
) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let prec = ctx.precision_bits;
    let h = ctx.float(&ctx.fd_step);
    let xp1 = Float::with_val(prec, x0 + &h);
    let xm1 = Float::with_val(prec, x0 - &h);
    match (ctx.fd_order, deriv) {
        (FdOrder::Two, DerivOrder::First) => {
            // (f(x+h) - f(x-h)) / (2h)
            let fp1 = f(&xp1)?;
            let fm1 = f(&xm1)?;
            let mut num = Float::with_val(prec, &fp1 - &fm1);
            num /= Float::with_val(prec, 2 * &h);
            Ok(num)
        }
        (FdOrder::Two, DerivOrder::Second) => {
            // (f(x+h) - 2 f(x) + f(x-h)) / h^2
            let fp1 = f(&xp1)?;
            let fm1 = f(&xm1)?;
            let f0 = f(x0)?;
            let mut num = Float::with_val(prec, &fp1 + &fm1);
            num -= Float::with_val(prec, 2 * &f0);
            num /= Float::with_val(prec, h.square_ref());
            Ok(num)
        }
        (FdOrder::Four, DerivOrder::First) => {
            // (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / (12h)
            let h2 = Float::with_val(prec, 2 * &h);
            let xp2 = Float::with_val(prec, x0 + &h2);
            let xm2 = Float::with_val(prec, x0 - &h2);
            let fp1 = f(&xp1)?;
            let fm1 = f(&xm1)?;
            let fp2 = f(&xp2)?;
            let fm2 = f(&xm2)?;
            let mut num = Float::with_val(prec, &fp1 - &fm1);
            num *= 8u32;
            num -= &fp2;
            num += &fm2;
            num /= Float::with_val(prec, 12 * &h);
            Ok(num)
        }
        (FdOrder::Four, DerivOrder::Second) => {
            // (-f(x+2h) + 16 f(x+h) - 30 f(x) + 16 f(x-h) - f(x-2h)) / (12h^2)
            let h2 = Float::with_val(prec, 2 * &h);
            let xp2 = Float::with_val(prec, x0 + &h2);
            let xm2 = Float::with_val(prec, x0 - &h2);
            let fp1 = f(&xp1)?;
            let fm1 = f(&xm1)?;
            let fp2 = f(&xp2)?;
            let fm2 = f(&xm2)?;
            let f0 = f(x0)?;
            let mut num = Float::with_val(prec, &fp1 + &fm1);
            num *= 16u32;
            num -= &fp2;
            num -= &fm2;
            num -= Float::with_val(prec, 30 * &f0);
            let mut den = Float::with_val(prec, h.square_ref());
            den *= 12u32;
            num /= den;
            Ok(num)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants_are_enforced() {
        assert!(NumericContext::new(64).is_err());
        let ctx = NumericContext::standard();
        assert_eq!(ctx.precision_bits(), 512);
        // Tolerance below 2^(16-prec) must be rejected.
        let too_tight = Float::with_val(512, Float::i_exp(1, -600));
        assert!(ctx.with_quad_rel_tol(too_tight).is_err());
        // Step so small that roundoff dominates must be rejected.
        let bad_step = Float::with_val(512, Float::parse("1e-200").unwrap());
        assert!(ctx.with_fd_step(bad_step).is_err());
    }

    #[test]
    fn gamma_matches_known_values() {
        let ctx = NumericContext::standard();
        // Gamma(1/2) = sqrt(pi)
        let half = ctx.float(0.5);
        let g = gamma(&half, &ctx).unwrap();
        let sqrt_pi = ctx.pi().sqrt();
        let err = ctx.float(&g - &sqrt_pi).abs();
        let bound = ctx.float(Float::i_exp(1, -500));
        assert!(err < bound, "Gamma(1/2) error {err}");
        // Gamma(5) = 24
        let five = ctx.float(5);
        let g5 = gamma(&five, &ctx).unwrap();
        assert_eq!(g5, 24u32);
    }

    #[test]
    fn gamma_rejects_poles() {
        let ctx = NumericContext::standard();
        for bad in [0i32, -1, -2, -7] {
            let x = ctx.float(bad);
            assert!(matches!(gamma(&x, &ctx), Err(Error::Pole(_))), "x = {bad}");
        }
        // Negative non-integers are fine: Gamma(-1/2) = -2 sqrt(pi).
        let x = ctx.float(-0.5);
        let g = gamma(&x, &ctx).unwrap();
        let expect = -2 * ctx.pi().sqrt();
        let err = ctx.float(&g - &expect).abs();
        assert!(err < ctx.float(Float::i_exp(1, -500)));
    }

    #[test]
    fn fd_derivative_differentiates_exp() {
        // d/dx exp(x) at 0 is 1; d^2/dx^2 exp(x) at 0 is 1.
        let ctx = NumericContext::standard();
        let x0 = ctx.float(0);
        let f = |x: &Float| Ok(Float::with_val(x.prec(), x.exp_ref()));
        for deriv in [DerivOrder::First, DerivOrder::Second] {
            let d = fd_derivative(f, &x0, deriv, &ctx).unwrap();
            let err = ctx.float(&d - 1u32).abs();
            // Order-4 stencil with h = 1e-25: truncation ~ h^4 = 1e-100.
            let bound = ctx.float(Float::parse("1e-95").unwrap());
            assert!(err < bound, "deriv {deriv:?} error {err}");
        }
    }

    #[test]
    fn fd_halving_step_shrinks_error_by_stencil_order() {
        // Truncation-dominated: halving h must shrink the error by about
        // 2^order (16 for the fourth-order stencil).
        let ctx = NumericContext::standard();
        let x0 = ctx.float(0.25);
        let f = |x: &Float| Ok(Float::with_val(x.prec(), x.sin_ref()));
        let exact = ctx.float(x0.cos_ref());
        let d1 = fd_derivative(f, &x0, DerivOrder::First, &ctx).unwrap();
        let half = ctx.float(ctx.fd_step()) / 2u32;
        let ctx_half = ctx.with_fd_step(half).unwrap();
        let d2 = fd_derivative(f, &x0, DerivOrder::First, &ctx_half).unwrap();
        let e1 = ctx.float(&d1 - &exact).abs();
        let e2 = ctx.float(&d2 - &exact).abs();
        let ratio = ctx.float(&e1 / &e2);
        assert!(ratio > 10u32, "error ratio {ratio} not >= 10");
        assert!(ratio < 22u32, "error ratio {ratio} not ~ 16");
    }
}
