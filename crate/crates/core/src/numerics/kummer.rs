//! Kummer's confluent hypergeometric function of the second kind.
//!
//! For `a > 0`, `z > 0` (and any real `b`) the function is evaluated from its
//! Laplace-type integral representation
//!
//! ```text
//! U(a, b, z) = (1 / Gamma(a)) * int_0^inf e^(-z s) s^(a-1) (1+s)^(b-a-1) ds,
//! ```
//!
//! by double-exponential quadrature on the half-line.  The `s^(a-1)` endpoint
//! singularity for `a < 1` and the slow algebraic growth of `(1+s)^(b-a-1)`
//! are both absorbed by the transform; the `e^(-z s)` factor supplies the
//! decay at infinity.  This single evaluation path keeps every downstream
//! consumer (moments in particular) on one audited code route.

use crate::error::{Error, Result};
use crate::numerics::quad::{integrate, Domain};
use crate::numerics::{gamma, NumericContext};
use rug::ops::Pow;
use rug::Float;

/// `U(a, b, z)` for `a > 0`, `z > 0`.
pub fn kummer_u(a: &Float, b: &Float, z: &Float, ctx: &NumericContext) -> Result<Float> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain("kummer_u arguments must be finite".into()));
    }
    if a.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!(
            "kummer_u integral representation requires a > 0, got a = {a}"
        )));
    }
    if z.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!(
            "kummer_u integral representation requires z > 0, got z = {z}"
        )));
    }
    let integral = integrate(
        |s: &Float| {
            let p = s.prec();
            // e^(-z s)
            let mut e = Float::with_val(p, z * s);
            e = -e;
            e.exp_mut();
            // s^(a-1)
            let am1 = Float::with_val(p, a - 1u32);
            let sa = Float::with_val(p, s.pow(&am1));
            // (1+s)^(b-a-1)
            let mut base = Float::with_val(p, s + 1u32);
            let mut expo = Float::with_val(p, b - a);
            expo -= 1u32;
            base = base.pow(&expo);
            e *= sa;
            e *= base;
            Ok(e)
        },
        &Domain::HalfLine,
        ctx,
    )?;
    let g = gamma(a, ctx)?;
    Ok(integral / g)
}
