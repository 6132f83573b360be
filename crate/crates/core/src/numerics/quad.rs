//! Double-exponential quadrature.
//!
//! Trapezoidal sums over the tanh-sinh family of variable transforms:
//!
//! * finite interval `(a, b)`:  `x = mid + rad * tanh((pi/2) sinh u)`,
//! * half-line `(0, inf)`:      `x = exp((pi/2) sinh u)`,
//! * real line:                 `x = sinh((pi/2) sinh u)`.
//!
//! After the transform the integrand decays double-exponentially in `u`, so
//! the trapezoidal rule converges at a near-exponential rate in the number of
//! refinement levels; each level halves the mesh `h = 2^-level` and reuses
//! all previously evaluated nodes.  Algebraic endpoint singularities such as
//! `x^(-1/2)` on the finite interval or half-line are absorbed by the decay
//! of the transformed weight.
//!
//! Levels are refined until two successive trapezoidal sums agree to the
//! context's relative tolerance.  Node recruitment along each wing stops once
//! terms are negligible relative to the running sum, with a hard cap on `|u|`
//! chosen from the tolerance.
//!
//! Finite intervals work at twice the usual guard precision: the node
//! `x = mid + rad tanh(v)` approaches an endpoint like `2 rad e^(-2v)`, and
//! forming it by that sum cancels to the working precision's absolute floor
//! long before the wing's true contribution is negligible when the integrand
//! is endpoint-singular.  Doubling the working bits pushes the saturation
//! point of `tanh` past the last node any `x^(-s)`, `s < 1`, singularity
//! needs at the context tolerance.

use crate::error::{Error, Result};
use crate::numerics::NumericContext;
use rug::float::Constant;
use rug::Float;

/// Integration domain for [`integrate`].
#[derive(Debug, Clone)]
pub enum Domain {
    /// Open finite interval `(a, b)`; the integrand may blow up at the
    /// endpoints as long as the singularity is integrable and algebraic.
    Finite(Float, Float),
    /// The half-line `(0, inf)`.
    HalfLine,
    /// The whole real line.
    RealLine,
}

/// Hard cap on refinement levels; level `l` has mesh `2^-l`.
const MAX_LEVEL: u32 = 14;
/// Levels always performed before convergence may be declared.
const MIN_LEVEL: u32 = 2;
/// Consecutive negligible terms required to truncate a wing.
const TRUNC_RUN: u32 = 3;

/// Transformed node: abscissa and trapezoidal weight at `u`.
///
/// Returns `None` when rounding collapses the abscissa onto an endpoint of a
/// finite interval (possible once `tanh` saturates); the true contribution of
/// such nodes is below tolerance, while evaluating a singular integrand there
/// would poison the sum.
fn de_node(domain: &Domain, u: &Float, prec: u32, pi_half: &Float) -> Option<(Float, Float)> {
    let sh = Float::with_val(prec, u.sinh_ref());
    let ch = Float::with_val(prec, u.cosh_ref());
    let v = Float::with_val(prec, &sh * pi_half);
    let du = Float::with_val(prec, &ch * pi_half);
    match domain {
        Domain::Finite(a, b) => {
            let mut rad = Float::with_val(prec, b - a);
            rad /= 2u32;
            let mut mid = Float::with_val(prec, a + b);
            mid /= 2u32;
            let th = Float::with_val(prec, v.tanh_ref());
            let mut x = Float::with_val(prec, &rad * &th);
            x += &mid;
            if x == *a || x == *b {
                return None;
            }
            let chv = Float::with_val(prec, v.cosh_ref());
            let mut w = Float::with_val(prec, &rad * &du);
            w /= chv.square();
            Some((x, w))
        }
        Domain::HalfLine => {
            let x = Float::with_val(prec, v.exp_ref());
            let w = Float::with_val(prec, &x * &du);
            Some((x, w))
        }
        Domain::RealLine => {
            let x = Float::with_val(prec, v.sinh_ref());
            let chv = Float::with_val(prec, v.cosh_ref());
            let w = chv * du;
            Some((x, w))
        }
    }
}

/// Weighted integrand sample at one node.
///
/// On the real line nodes with `u > 0` account for the mirror point `-x` as
/// well, so odd integrands cancel exactly (the transform is odd and MPFR
/// rounding is sign-symmetric).
fn eval_term<F>(f: &mut F, x: &Float, w: &Float, prec: u32, mirrored: bool) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let fx = f(x)?;
    let mut s = Float::with_val(prec, &fx);
    if mirrored {
        let mx = Float::with_val(prec, -x);
        let fmx = f(&mx)?;
        s += &fmx;
    }
    let term = s * w;
    if term.is_nan() {
        return Err(Error::Convergence(
            "integrand produced a non-finite value inside the domain".into(),
        ));
    }
    Ok(term)
}

/// Double-exponential quadrature of `f` over `domain` to the context's
/// relative tolerance.
///
/// Requires the integrand to be analytic on the open domain, with at worst
/// integrable algebraic endpoint singularities and (on unbounded domains)
/// decay that beats every polynomial.  Fails with [`Error::Convergence`] if
/// the level refinement does not settle.
pub fn integrate<F>(mut f: F, domain: &Domain, ctx: &NumericContext) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    if let Domain::Finite(a, b) = domain {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "finite domain requires a < b, got ({a}, {b})"
            )));
        }
    }
    let prec = match domain {
        Domain::Finite(..) => 2 * (ctx.precision_bits() + 64),
        _ => ctx.precision_bits() + 64,
    };
    let pi_half = Float::with_val(prec, Constant::Pi) / 2u32;
    let tol = Float::with_val(prec, ctx.quad_rel_tol());
    let term_tol = Float::with_val(prec, &tol) >> 10;
    // Wing cap: beyond u_cap the transformed weight is far below tolerance
    // even against weak x^(1/2)-type net decay.
    let u_cap = {
        let e = tol.get_exp().unwrap_or(-(prec as i32)) as f64;
        let l = (-e).max(64.0) * std::f64::consts::LN_2 + 64.0;
        ((l * 4.0 / std::f64::consts::PI).ln() + 2.0).clamp(4.0, 12.0)
    };

    let mirrored = matches!(domain, Domain::RealLine);
    let mut integral = Float::with_val(prec, 0);
    let mut have_prev = false;

    for level in 0..=MAX_LEVEL {
        let h = Float::with_val(prec, Float::i_exp(1, -(level as i32)));
        let mut sum = Float::with_val(prec, 0);
        // Scale of the partial sums, for wing truncation thresholds.
        let mut scale0 = Float::with_val(prec, integral.abs_ref());
        scale0 /= &h;

        // Center node, only at the coarsest level.
        if level == 0 {
            let u0 = Float::with_val(prec, 0);
            if let Some((x, w)) = de_node(domain, &u0, prec, &pi_half) {
                let term = eval_term(&mut f, &x, &w, prec, false)?;
                sum += term;
            }
        }

        // At level 0 every integer k is new; afterwards only odd k.
        let (start, step) = if level == 0 { (1u64, 1u64) } else { (1u64, 2u64) };
        let wings: &[i32] = if mirrored { &[1] } else { &[1, -1] };
        for &sign in wings {
            let mut run = 0u32;
            let mut k = start;
            loop {
                let uf = (k as f64) * 0.5f64.powi(level as i32);
                if uf > u_cap {
                    break;
                }
                let mut u = Float::with_val(prec, k);
                u *= &h;
                if sign < 0 {
                    u = -u;
                }
                if let Some((x, w)) = de_node(domain, &u, prec, &pi_half) {
                    let term = eval_term(&mut f, &x, &w, prec, mirrored)?;
                    let mag = Float::with_val(prec, term.abs_ref());
                    sum += term;
                    let mut thr = Float::with_val(prec, sum.abs_ref());
                    thr += &scale0;
                    thr *= &term_tol;
                    if mag <= thr && uf >= 1.0 {
                        run += 1;
                        if run >= TRUNC_RUN {
                            break;
                        }
                    } else {
                        run = 0;
                    }
                } else {
                    // Node collapsed onto an endpoint: the wing is exhausted.
                    break;
                }
                k += step;
            }
        }

        let mut new_integral = sum * &h;
        if have_prev {
            let mut half_prev = Float::with_val(prec, &integral);
            half_prev /= 2u32;
            new_integral += half_prev;
        }

        if level >= MIN_LEVEL {
            let delta = Float::with_val(prec, &new_integral - &integral).abs();
            let mut bound = Float::with_val(prec, new_integral.abs_ref());
            bound *= &tol;
            if delta <= bound {
                return Ok(Float::with_val(ctx.precision_bits(), new_integral));
            }
        }
        integral = new_integral;
        have_prev = true;
    }

    Err(Error::Convergence(format!(
        "quadrature did not settle within {MAX_LEVEL} refinement levels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn assert_close(got: &Float, want: &Float, tol_exp: i32, what: &str) {
        let prec = got.prec();
        let err = Float::with_val(prec, got - want).abs();
        let mut scale = Float::with_val(prec, want.abs_ref());
        scale += 1u32;
        let bound = scale * Float::with_val(prec, Float::i_exp(1, tol_exp));
        assert!(err < bound, "{what}: error {err}");
    }

    #[test]
    fn gaussian_integral_over_real_line() {
        let ctx = NumericContext::standard();
        let got = integrate(
            |x: &Float| {
                let mut e = Float::with_val(x.prec(), x.square_ref());
                e = -e;
                Ok(e.exp())
            },
            &Domain::RealLine,
            &ctx,
        )
        .unwrap();
        let want = ctx.pi().sqrt();
        assert_close(&got, &want, -390, "int exp(-x^2) over R");
    }

    #[test]
    fn endpoint_singularity_on_finite_interval() {
        // int_0^1 x^(-1/2) dx = 2, singular at the left endpoint.
        let ctx = NumericContext::standard();
        let dom = Domain::Finite(ctx.float(0), ctx.float(1));
        let got = integrate(
            |x: &Float| {
                let r = Float::with_val(x.prec(), x.sqrt_ref());
                Ok(Float::with_val(x.prec(), 1u32) / r)
            },
            &dom,
            &ctx,
        )
        .unwrap();
        let want = ctx.float(2);
        assert_close(&got, &want, -390, "int_0^1 x^(-1/2)");
    }

    #[test]
    fn half_line_with_algebraic_singularity_and_decay() {
        // int_0^inf s^(-1/2) e^(-s) ds = Gamma(1/2) = sqrt(pi).
        let ctx = NumericContext::standard();
        let got = integrate(
            |s: &Float| {
                let r = Float::with_val(s.prec(), s.sqrt_ref());
                let mut e = Float::with_val(s.prec(), -s);
                e.exp_mut();
                Ok(e / r)
            },
            &Domain::HalfLine,
            &ctx,
        )
        .unwrap();
        let want = ctx.pi().sqrt();
        assert_close(&got, &want, -390, "int_0^inf s^(-1/2) e^-s");
    }

    #[test]
    fn odd_integrand_cancels_exactly() {
        let ctx = NumericContext::standard();
        let got = integrate(
            |x: &Float| {
                let mut e = Float::with_val(x.prec(), x.square_ref());
                e = -e;
                e.exp_mut();
                Ok(e * Float::with_val(x.prec(), x.pow(3u32)))
            },
            &Domain::RealLine,
            &ctx,
        )
        .unwrap();
        assert_eq!(got.cmp0(), Some(std::cmp::Ordering::Equal), "odd moment must vanish, got {got}");
    }

    #[test]
    fn tolerance_halving_changes_result_below_coarser_tolerance() {
        let ctx = NumericContext::standard();
        let f = |x: &Float| {
            let mut e = Float::with_val(x.prec(), x.square_ref());
            e = -e;
            e.exp_mut();
            let mut q = Float::with_val(x.prec(), x.square_ref());
            q += 1u32;
            Ok(e / q)
        };
        let i1 = integrate(f, &Domain::RealLine, &ctx).unwrap();
        let tighter = ctx
            .with_quad_rel_tol(ctx.float(ctx.quad_rel_tol()) / 2u32)
            .unwrap();
        let i2 = integrate(f, &Domain::RealLine, &tighter).unwrap();
        let diff = ctx.float(&i1 - &i2).abs();
        let mut bound = ctx.float(i1.abs_ref());
        bound *= ctx.quad_rel_tol();
        assert!(diff <= bound, "tolerance halving moved the result by {diff}");
    }

    #[test]
    fn rejects_bad_finite_domain() {
        let ctx = NumericContext::standard();
        let dom = Domain::Finite(ctx.float(1), ctx.float(0));
        let r = integrate(|_x: &Float| Ok(Float::with_val(64, 1u32)), &dom, &ctx);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
