//! Equilibrium measure of the Coulomb fluid at one-cut parameters:
//! endpoint, density, Lagrange multiplier, and free energy.

use super::require_one_cut;
use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::numerics::{integrate, Domain, NumericContext};
use rug::Float;

/// One-cut equilibrium measure for `n` charges (a positive real; the
/// continuum limit does not care about integrality).
#[derive(Debug, Clone)]
pub struct EquilibriumMeasure {
    params: WeightParams,
    n: Float,
    /// Right endpoint `b > 0` of the support `(-b, b)`.
    b: Float,
    /// `b^2`, the variable the endpoint condition is solved in.
    b_sq: Float,
    /// Lagrange multiplier `A` of the constrained minimization.
    a_lagrange: Float,
    precision_bits: u32,
}

/// Solve the endpoint condition
/// `b^2 - 2 lambda + 2 lambda / sqrt(1 + b^2 t) = 2n`
/// by a bracketed Newton iteration on `u = b^2` and assemble the measure.
///
/// The root is bracketed by `[2n, 2n + 2 lambda]` for `lambda > 0` and by
/// `[2n + 2 lambda, 2n]` for `lambda < 0`; Newton steps that leave the
/// bracket fall back to bisection.  Convergence is declared at relative
/// step `2^(32 - precision)`.
pub fn solve_endpoint(
    n: &Float,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<EquilibriumMeasure> {
    require_one_cut(params)?;
    let prec = ctx.precision_bits();
    if !(n.is_finite() && n.cmp0() == Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Domain(format!("charge count must be positive, got {n}")));
    }
    let n = Float::with_val(prec, n);
    let t = Float::with_val(prec, params.t());
    let lam = Float::with_val(prec, params.lambda());
    let two_n = Float::with_val(prec, 2 * &n);
    let two_lam = Float::with_val(prec, 2 * &lam);

    // f(u) = u - 2 lambda + 2 lambda / sqrt(1 + u t) - 2n
    let f = |u: &Float| -> Float {
        let mut root = Float::with_val(prec, u * &t);
        root += 1u32;
        root.sqrt_mut();
        let mut val = Float::with_val(prec, &two_lam / &root);
        val += u;
        val -= &two_lam;
        val -= &two_n;
        val
    };
    // f'(u) = 1 - lambda t / (1 + u t)^(3/2)
    let fp = |u: &Float| -> Float {
        let mut base = Float::with_val(prec, u * &t);
        base += 1u32;
        let mut pow = base.clone().sqrt();
        pow *= &base;
        let mut val = Float::with_val(prec, &lam * &t);
        val /= &pow;
        Float::with_val(prec, 1u32 - val)
    };

    let u = match lam.cmp0() {
        Some(std::cmp::Ordering::Equal) => two_n.clone(),
        Some(ord) => {
            let guess_hi = Float::with_val(prec, &two_n + &two_lam);
            let (mut lo, mut hi) = if ord == std::cmp::Ordering::Greater {
                (two_n.clone(), guess_hi)
            } else {
                (guess_hi, two_n.clone())
            };
            if lo.cmp0() != Some(std::cmp::Ordering::Greater) {
                return Err(Error::Domain(format!(
                    "endpoint bracket [{lo}, {hi}] leaves the positive axis; \
                     n is too small for this lambda"
                )));
            }
            let mut u = if ord == std::cmp::Ordering::Greater {
                Float::with_val(prec, &two_n + &lam)
            } else {
                Float::with_val(prec, &two_n + &two_lam)
            };
            let tol_exp = 32i32 - prec as i32;
            let mut converged = false;
            for _ in 0..prec as usize {
                let fu = f(&u);
                let du = Float::with_val(prec, &fu / &fp(&u));
                let mut next = Float::with_val(prec, &u - &du);
                if next <= lo || next >= hi {
                    // Bisect using the sign of f at u (f is increasing).
                    if fu.cmp0() == Some(std::cmp::Ordering::Greater) {
                        hi = u.clone();
                    } else {
                        lo = u.clone();
                    }
                    next = Float::with_val(prec, &lo + &hi);
                    next /= 2u32;
                } else if fu.cmp0() == Some(std::cmp::Ordering::Greater) {
                    hi = u.clone();
                } else {
                    lo = u.clone();
                }
                let step = Float::with_val(prec, &next - &u).abs();
                let bound = Float::with_val(prec, Float::i_exp(1, tol_exp)) * &u;
                u = next;
                if step <= bound {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence(
                    "endpoint Newton iteration did not reach the requested \
                     relative tolerance"
                        .into(),
                ));
            }
            u
        }
        None => return Err(Error::Domain("lambda is not a number".into())),
    };

    let b = Float::with_val(prec, u.sqrt_ref());
    // A = b^2/2 - n ln(b^2/4) - 2 lambda ln((1 + sqrt(1 + b^2 t)) / 2)
    let mut log_arg = Float::with_val(prec, &u / 4u32);
    log_arg.ln_mut();
    let mut root = Float::with_val(prec, &u * &t);
    root += 1u32;
    root.sqrt_mut();
    let mut half_root = Float::with_val(prec, &root + 1u32);
    half_root /= 2u32;
    half_root.ln_mut();
    let mut a_lagrange = Float::with_val(prec, &u / 2u32);
    a_lagrange -= Float::with_val(prec, &n * &log_arg);
    a_lagrange -= Float::with_val(prec, &two_lam * &half_root);

    Ok(EquilibriumMeasure {
        params: params.clone(),
        n,
        b,
        b_sq: u,
        a_lagrange,
        precision_bits: prec,
    })
}

impl EquilibriumMeasure {
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn n(&self) -> &Float {
        &self.n
    }

    pub fn b(&self) -> &Float {
        &self.b
    }

    pub fn b_squared(&self) -> &Float {
        &self.b_sq
    }

    pub fn a_lagrange(&self) -> &Float {
        &self.a_lagrange
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Density `sigma(x)` on the support; errors outside `[-b, b]`.
    pub fn density(&self, x: &Float) -> Result<Float> {
        let prec = self.precision_bits;
        let ax = Float::with_val(prec, x.abs_ref());
        if ax > self.b {
            return Err(Error::Domain(format!(
                "x = {x} lies outside the support (-{}, {})",
                self.b.to_string_radix(10, Some(10)),
                self.b.to_string_radix(10, Some(10))
            )));
        }
        let t = self.params.t();
        let lam = self.params.lambda();
        let mut gap = Float::with_val(prec, x.square_ref());
        gap = Float::with_val(prec, &self.b_sq - gap);
        if gap.cmp0() == Some(std::cmp::Ordering::Less) {
            gap = Float::with_val(prec, 0);
        }
        gap.sqrt_mut();
        gap /= Float::with_val(prec, rug::float::Constant::Pi);

        let mut root = Float::with_val(prec, &self.b_sq * t);
        root += 1u32;
        root.sqrt_mut();
        let mut den = Float::with_val(prec, x.square_ref());
        den *= t;
        den += 1u32;
        den *= &root;
        let mut factor = Float::with_val(prec, lam * t);
        factor /= &den;
        factor = Float::with_val(prec, 1u32 - factor);
        Ok(gap * factor)
    }

    /// `|integral of sigma over (-b, b)  -  n|` by direct quadrature.
    ///
    /// Closed form, the integral is
    /// `b^2/2 - lambda + lambda / sqrt(1 + b^2 t)`, which equals `n` exactly
    /// by the endpoint condition, so this measures endpoint + quadrature
    /// error together.
    pub fn normalization_check(&self, ctx: &NumericContext) -> Result<Float> {
        let prec = self.precision_bits;
        let domain = Domain::Finite(
            -Float::with_val(prec, &self.b),
            Float::with_val(prec, &self.b),
        );
        let total = integrate(|x| self.density(x), &domain, ctx)?;
        Ok(Float::with_val(prec, &total - &self.n).abs())
    }

    /// Free energy of the continuum charge system,
    /// `F = n A / 2 + (1/2) integral of sigma(x) v(x) dx`
    /// with `v(x) = x^2 - lambda ln(1 + t x^2)`, by direct quadrature.
    pub fn free_energy_numeric(&self, ctx: &NumericContext) -> Result<Float> {
        let prec = self.precision_bits;
        let t = self.params.t();
        let lam = self.params.lambda();
        let domain = Domain::Finite(
            -Float::with_val(prec, &self.b),
            Float::with_val(prec, &self.b),
        );
        let energy = integrate(
            |x| {
                let sigma = self.density(x)?;
                let x_sq = Float::with_val(prec, x.square_ref());
                let mut log_part = Float::with_val(prec, &x_sq * t);
                log_part += 1u32;
                log_part.ln_mut();
                log_part *= lam;
                let v = Float::with_val(prec, &x_sq - &log_part);
                Ok(sigma * v)
            },
            &domain,
            ctx,
        )?;
        let mut f = Float::with_val(prec, &self.n * &self.a_lagrange);
        f += &energy;
        f /= 2u32;
        Ok(f)
    }
}
