//! Truncated large-`n` asymptotic series for the equilibrium data and the
//! recurrence/determinant quantities.
//!
//! Every coefficient is an exact rational expression in `lambda` and
//! `sqrt t`, assembled in the working precision at call time; no decimal
//! approximations enter.  Each function evaluates exactly the terms listed
//! in its remainder note and nothing further.

use super::require_one_cut;
use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::numerics::NumericContext;
use rug::Float;

/// Which asymptotic expansion [`series_eval`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Squared endpoint `b^2` of the equilibrium support; remainder
    /// `O(n^-6)`.
    EndpointB2,
    /// Lagrange multiplier `A`; remainder `O(n^-7/2)`.
    LagrangeA,
    /// Free energy `F`; remainder `O(n^-5/2)`.
    FreeEnergyF,
    /// Recurrence coefficient `beta_n`; remainder `O(n^-4)`.
    Beta,
    /// Sub-leading coefficient `p(n, t)`; remainder `O(n^-3)`.
    PCoeff,
    /// Log-derivative sum `H_n`; remainder `O(n^-3)`.
    CapH,
    /// `ln D_n`; carries two fitted constants, so it is evaluated by
    /// [`log_d_series`], not by [`series_eval`].
    LogD,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::EndpointB2 => "b2",
            SeriesKind::LagrangeA => "A",
            SeriesKind::FreeEnergyF => "F",
            SeriesKind::Beta => "beta",
            SeriesKind::PCoeff => "p",
            SeriesKind::CapH => "H",
            SeriesKind::LogD => "logD",
        }
    }
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evaluate the truncated expansion `kind` at real `n > 0`.
///
/// [`SeriesKind::LogD`] is rejected here because its expansion contains two
/// constants not determined by the expansion itself; see [`log_d_series`].
pub fn series_eval(
    kind: SeriesKind,
    n: &Float,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<Float> {
    require_one_cut(params)?;
    if !(n.is_finite() && n.cmp0() == Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Domain(format!("series argument must be positive, got {n}")));
    }
    let prec = ctx.precision_bits();
    let n = Float::with_val(prec, n);
    let t = Float::with_val(prec, params.t());
    let lam = Float::with_val(prec, params.lambda());
    match kind {
        SeriesKind::EndpointB2 => Ok(endpoint_b2(&n, &t, &lam, prec)),
        SeriesKind::LagrangeA => Ok(lagrange_a(&n, &t, &lam, prec)),
        SeriesKind::FreeEnergyF => Ok(free_energy_f(&n, &t, &lam, prec)),
        SeriesKind::Beta => Ok(beta_series(&n, &t, &lam, prec)),
        SeriesKind::PCoeff => Ok(p_series(&n, &t, &lam, prec)),
        SeriesKind::CapH => Ok(cap_h_series(&n, &t, &lam, prec)),
        SeriesKind::LogD => Err(Error::Config(
            "the ln D_n expansion carries two fitted constants; evaluate it \
             with log_d_series"
                .into(),
        )),
    }
}

/// Evaluate the `ln D_n` expansion with the two integration constants
/// supplied (`c1` multiplies `n`, `c0` is the constant term); remainder
/// `O(n^-2)`:
///
/// ```text
/// ln D_n = n^2/2 ln n + n lambda ln n - (1/12 - lambda^2/2) ln n
///          - n^2 (3/4 + ln2/2) + n (lambda ln t + c1)
///          + 2 lambda sqrt(2n) / sqrt t - lambda / t
///          + lambda^2/2 ln t + c0
///          + lambda (6 lambda t + 1) / (3 sqrt(2n) t^(3/2))
///          - lambda [3 lambda + (1 - 2 lambda^2) t] / (12 n t)
///          - lambda [15 (4 lambda^2 - 1) t^2 + 20 lambda t + 3]
///            / (120 sqrt2 n^(3/2) t^(5/2))
/// ```
pub fn log_d_series(
    n: &Float,
    params: &WeightParams,
    c1: &Float,
    c0: &Float,
    ctx: &NumericContext,
) -> Result<Float> {
    require_one_cut(params)?;
    if !(n.is_finite() && n.cmp0() == Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Domain(format!("series argument must be positive, got {n}")));
    }
    let prec = ctx.precision_bits();
    let n = Float::with_val(prec, n);
    let t = Float::with_val(prec, params.t());
    let lam = Float::with_val(prec, params.lambda());

    let ln_n = Float::with_val(prec, n.ln_ref());
    let ln_t = Float::with_val(prec, t.ln_ref());
    let ln_2 = Float::with_val(prec, 2u32).ln();
    let n_sq = Float::with_val(prec, n.square_ref());
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let sqrt_t = Float::with_val(prec, t.sqrt_ref());
    let sqrt_2n = Float::with_val(prec, 2 * &n).sqrt();
    let w = Float::with_val(prec, &lam * &t);

    let mut acc = Float::with_val(prec, &n_sq * &ln_n);
    acc /= 2u32;
    acc += Float::with_val(prec, &n * &lam) * &ln_n;
    // -(1/12 - lambda^2/2) ln n
    let mut coef = Float::with_val(prec, &lam_sq / 2u32);
    coef -= Float::with_val(prec, 1u32) / 12u32;
    acc += Float::with_val(prec, &coef * &ln_n);
    // -n^2 (3/4 + ln2/2)
    let mut quarter = Float::with_val(prec, &ln_2 / 2u32);
    quarter += Float::with_val(prec, 3u32) / 4u32;
    acc -= Float::with_val(prec, &quarter * &n_sq);
    // n (lambda ln t + c1)
    let mut lin = Float::with_val(prec, &lam * &ln_t);
    lin += c1;
    acc += Float::with_val(prec, &lin * &n);
    // 2 lambda sqrt(2n) / sqrt t
    let mut term = Float::with_val(prec, &lam * &sqrt_2n);
    term *= 2u32;
    term /= &sqrt_t;
    acc += &term;
    // -lambda / t
    acc -= Float::with_val(prec, &lam / &t);
    // lambda^2/2 ln t
    let mut half_l2 = Float::with_val(prec, &lam_sq * &ln_t);
    half_l2 /= 2u32;
    acc += &half_l2;
    acc += c0;
    // + lambda (6 lambda t + 1) / (3 sqrt(2n) t^(3/2))
    let mut num = Float::with_val(prec, 6 * &w);
    num += 1u32;
    num *= &lam;
    let mut den = Float::with_val(prec, &sqrt_2n * &sqrt_t);
    den *= &t;
    den *= 3u32;
    acc += Float::with_val(prec, &num / &den);
    // - lambda [3 lambda + (1 - 2 lambda^2) t] / (12 n t)
    let mut inner = Float::with_val(prec, 2 * &lam_sq);
    inner = Float::with_val(prec, 1u32 - inner);
    inner *= &t;
    inner += Float::with_val(prec, 3 * &lam);
    inner *= &lam;
    let mut den = Float::with_val(prec, &n * &t);
    den *= 12u32;
    acc -= Float::with_val(prec, &inner / &den);
    // - lambda [15 (4 lambda^2 - 1) t^2 + 20 lambda t + 3]
    //   / (120 sqrt2 n^(3/2) t^(5/2))
    let mut inner = Float::with_val(prec, 4 * &lam_sq);
    inner -= 1u32;
    inner *= Float::with_val(prec, t.square_ref());
    inner *= 15u32;
    inner += Float::with_val(prec, 20 * &w);
    inner += 3u32;
    inner *= &lam;
    let mut den = Float::with_val(prec, &n * &n.clone().sqrt());
    den *= &sqrt2;
    den *= Float::with_val(prec, t.square_ref());
    den *= &sqrt_t;
    den *= 120u32;
    acc -= Float::with_val(prec, &inner / &den);
    Ok(acc)
}

/// `b^2 = 2n + 2 lambda - sqrt2 lambda/(nt)^(1/2)
///  + lambda (2w+1)/(2 sqrt2 (nt)^(3/2)) - lambda^2/(2 n^2 t)
///  - 3 lambda (2w+1)^2/(16 sqrt2 (nt)^(5/2)) + lambda^2 (2w+1)/(2 n^3 t^2)
///  + 5 lambda (8w^3+4w^2+6w+1)/(64 sqrt2 (nt)^(7/2))
///  - 3 lambda^2 (2w+1)^2/(8 n^4 t^3)
///  - 35 lambda (4w^2-1)(4w^2-8w-1)/(1024 sqrt2 (nt)^(9/2))
///  + lambda^2 (4w+1)(2w^2+2w+1)/(4 n^5 t^4)
///  + 63 lambda (2w+1)^2 (8w^3-68w^2+6w+1)/(4096 sqrt2 (nt)^(11/2))`,
/// `w = lambda t`.
fn endpoint_b2(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let w = Float::with_val(prec, lam * t);
    let nt = Float::with_val(prec, n * t);
    let inv_half = Float::with_val(prec, nt.sqrt_ref()).recip(); // (nt)^(-1/2)
    let inv_nt = Float::with_val(prec, nt.recip_ref());
    let two_w_1 = Float::with_val(prec, 2 * &w) + 1u32;
    let two_w_1_sq = Float::with_val(prec, two_w_1.square_ref());
    let inv_n = Float::with_val(prec, n.recip_ref());
    let inv_t = Float::with_val(prec, t.recip_ref());

    let mut acc = Float::with_val(prec, 2 * n);
    acc += Float::with_val(prec, 2 * lam);

    // -sqrt2 lambda (nt)^(-1/2)
    let mut term = Float::with_val(prec, &sqrt2 * lam);
    term *= &inv_half;
    acc -= &term;

    // + lambda (2w+1) / (2 sqrt2) * (nt)^(-3/2)
    let mut pow = Float::with_val(prec, &inv_half * &inv_nt); // (nt)^(-3/2)
    let mut term = Float::with_val(prec, lam * &two_w_1);
    term *= &pow;
    term /= Float::with_val(prec, 2 * &sqrt2);
    acc += &term;

    // - lambda^2 / (2 n^2 t)
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &inv_t;
    term *= &lam_sq;
    term /= 2u32;
    acc -= &term;

    // - 3 lambda (2w+1)^2 / (16 sqrt2) * (nt)^(-5/2)
    pow *= &inv_nt; // (nt)^(-5/2)
    let mut term = Float::with_val(prec, lam * &two_w_1_sq);
    term *= 3u32;
    term *= &pow;
    term /= Float::with_val(prec, 16 * &sqrt2);
    acc -= &term;

    // + lambda^2 (2w+1) / (2 n^3 t^2)
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &inv_n;
    term *= Float::with_val(prec, inv_t.square_ref());
    term *= &lam_sq;
    term *= &two_w_1;
    term /= 2u32;
    acc += &term;

    // + 5 lambda (8w^3 + 4w^2 + 6w + 1) / (64 sqrt2) * (nt)^(-7/2)
    pow *= &inv_nt; // (nt)^(-7/2)
    let w_sq = Float::with_val(prec, w.square_ref());
    let w_cu = Float::with_val(prec, &w_sq * &w);
    let mut poly = Float::with_val(prec, 8 * &w_cu);
    poly += Float::with_val(prec, 4 * &w_sq);
    poly += Float::with_val(prec, 6 * &w);
    poly += 1u32;
    let mut term = Float::with_val(prec, lam * &poly);
    term *= 5u32;
    term *= &pow;
    term /= Float::with_val(prec, 64 * &sqrt2);
    acc += &term;

    // - 3 lambda^2 (2w+1)^2 / (8 n^4 t^3)
    let inv_n2 = Float::with_val(prec, inv_n.square_ref());
    let inv_t2 = Float::with_val(prec, inv_t.square_ref());
    let mut term = Float::with_val(prec, &inv_n2 * &inv_n2);
    term *= Float::with_val(prec, &inv_t2 * &inv_t);
    term *= &lam_sq;
    term *= &two_w_1_sq;
    term *= 3u32;
    term /= 8u32;
    acc -= &term;

    // - 35 lambda (4w^2 - 1)(4w^2 - 8w - 1) / (1024 sqrt2) * (nt)^(-9/2)
    pow *= &inv_nt; // (nt)^(-9/2)
    let four_w_sq = Float::with_val(prec, 4 * &w_sq);
    let p1 = Float::with_val(prec, &four_w_sq - 1u32);
    let mut p2 = Float::with_val(prec, 8 * &w);
    p2 = Float::with_val(prec, &four_w_sq - p2);
    p2 -= 1u32;
    let mut term = Float::with_val(prec, &p1 * &p2);
    term *= lam;
    term *= 35u32;
    term *= &pow;
    term /= Float::with_val(prec, 1024 * &sqrt2);
    acc -= &term;

    // + lambda^2 (4w+1)(2w^2 + 2w + 1) / (4 n^5 t^4)
    let four_w_1 = Float::with_val(prec, 4 * &w) + 1u32;
    let mut qoly = Float::with_val(prec, 2 * &w_sq);
    qoly += Float::with_val(prec, 2 * &w);
    qoly += 1u32;
    let mut term = Float::with_val(prec, &inv_n2 * &inv_n2);
    term *= &inv_n;
    term *= Float::with_val(prec, &inv_t2 * &inv_t2);
    term *= &lam_sq;
    term *= &four_w_1;
    term *= &qoly;
    term /= 4u32;
    acc += &term;

    // + 63 lambda (2w+1)^2 (8w^3 - 68w^2 + 6w + 1) / (4096 sqrt2)
    //   * (nt)^(-11/2)
    pow *= &inv_nt; // (nt)^(-11/2)
    let mut roly = Float::with_val(prec, 8 * &w_cu);
    roly -= Float::with_val(prec, 68 * &w_sq);
    roly += Float::with_val(prec, 6 * &w);
    roly += 1u32;
    let mut term = Float::with_val(prec, lam * &two_w_1_sq);
    term *= &roly;
    term *= 63u32;
    term *= &pow;
    term /= Float::with_val(prec, 4096 * &sqrt2);
    acc += &term;

    acc
}

/// `A = n (1 + ln(2/n)) + lambda ln(2/(nt)) - sqrt2 lambda/(nt)^(1/2)
///  - lambda^2/(2n) + lambda (1+6w)/(6 sqrt2 (nt)^(3/2))
///  + lambda^2 (2w-3)/(12 n^2 t)
///  - lambda [20w(3w+1)+3]/(80 sqrt2 (nt)^(5/2))
///  + lambda^2 [3-2w(w-6)]/(24 n^3 t^2)`, `w = lambda t`.
fn lagrange_a(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let w = Float::with_val(prec, lam * t);
    let nt = Float::with_val(prec, n * t);
    let inv_half = Float::with_val(prec, nt.sqrt_ref()).recip();
    let inv_nt = Float::with_val(prec, nt.recip_ref());
    let ln_2 = Float::with_val(prec, 2u32).ln();
    let ln_n = Float::with_val(prec, n.ln_ref());
    let ln_t = Float::with_val(prec, t.ln_ref());
    let inv_n = Float::with_val(prec, n.recip_ref());
    let inv_t = Float::with_val(prec, t.recip_ref());

    // n (1 + ln 2 - ln n)
    let mut acc = Float::with_val(prec, &ln_2 - &ln_n);
    acc += 1u32;
    acc *= n;
    // + lambda (ln 2 - ln n - ln t)
    let mut term = Float::with_val(prec, &ln_2 - &ln_n);
    term -= &ln_t;
    term *= lam;
    acc += &term;
    // - sqrt2 lambda (nt)^(-1/2)
    let mut term = Float::with_val(prec, &sqrt2 * lam);
    term *= &inv_half;
    acc -= &term;
    // - lambda^2 / (2n)
    let mut term = Float::with_val(prec, &lam_sq * &inv_n);
    term /= 2u32;
    acc -= &term;
    // + lambda (1 + 6w) / (6 sqrt2) * (nt)^(-3/2)
    let mut pow = Float::with_val(prec, &inv_half * &inv_nt);
    let mut poly = Float::with_val(prec, 6 * &w);
    poly += 1u32;
    let mut term = Float::with_val(prec, lam * &poly);
    term *= &pow;
    term /= Float::with_val(prec, 6 * &sqrt2);
    acc += &term;
    // + lambda^2 (2w - 3) / (12 n^2 t)
    let mut poly = Float::with_val(prec, 2 * &w);
    poly -= 3u32;
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &inv_t;
    term *= &lam_sq;
    term *= &poly;
    term /= 12u32;
    acc += &term;
    // - lambda [20w(3w+1) + 3] / (80 sqrt2) * (nt)^(-5/2)
    pow *= &inv_nt;
    let mut poly = Float::with_val(prec, 3 * &w);
    poly += 1u32;
    poly *= &w;
    poly *= 20u32;
    poly += 3u32;
    let mut term = Float::with_val(prec, lam * &poly);
    term *= &pow;
    term /= Float::with_val(prec, 80 * &sqrt2);
    acc -= &term;
    // + lambda^2 [3 - 2w(w - 6)] / (24 n^3 t^2)
    let mut poly = Float::with_val(prec, &w - 6u32);
    poly *= &w;
    poly *= 2u32;
    poly = Float::with_val(prec, 3u32 - poly);
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &inv_n;
    term *= Float::with_val(prec, inv_t.square_ref());
    term *= &lam_sq;
    term *= &poly;
    term /= 24u32;
    acc += &term;

    acc
}

/// `F = -n^2/2 ln n - n lambda ln n - lambda^2/2 ln n
///  + (3/4 + ln2/2) n^2 + n lambda (1 + ln(2/t))
///  - 2 sqrt(2n) lambda / sqrt t + lambda (2 + w ln(8/t)) / (2t)
///  - lambda (6w+1)/(3 sqrt(2n) t^(3/2)) - lambda^2 (2w-3)/(12 n t)
///  + lambda [20w(3w+1)+3]/(120 sqrt2 n^(3/2) t^(5/2))
///  + lambda^2 (2w^2 - 12w - 3)/(48 n^2 t^2)`, `w = lambda t`.
fn free_energy_f(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let w = Float::with_val(prec, lam * t);
    let w_sq = Float::with_val(prec, w.square_ref());
    let ln_2 = Float::with_val(prec, 2u32).ln();
    let ln_n = Float::with_val(prec, n.ln_ref());
    let ln_t = Float::with_val(prec, t.ln_ref());
    let n_sq = Float::with_val(prec, n.square_ref());
    let sqrt_2n = Float::with_val(prec, 2 * n).sqrt();
    let sqrt_t = Float::with_val(prec, t.sqrt_ref());
    let inv_n = Float::with_val(prec, n.recip_ref());
    let inv_t = Float::with_val(prec, t.recip_ref());

    // -n^2/2 ln n - n lambda ln n - lambda^2/2 ln n
    let mut acc = Float::with_val(prec, &n_sq / 2u32);
    acc += Float::with_val(prec, n * lam);
    acc += Float::with_val(prec, &lam_sq / 2u32);
    acc *= &ln_n;
    acc = -acc;
    // + (3/4 + ln2/2) n^2
    let mut coef = Float::with_val(prec, &ln_2 / 2u32);
    coef += Float::with_val(prec, 3u32) / 4u32;
    acc += Float::with_val(prec, &coef * &n_sq);
    // + n lambda (1 + ln 2 - ln t)
    let mut coef = Float::with_val(prec, &ln_2 - &ln_t);
    coef += 1u32;
    coef *= lam;
    acc += Float::with_val(prec, &coef * n);
    // - 2 sqrt(2n) lambda / sqrt t
    let mut term = Float::with_val(prec, &sqrt_2n * lam);
    term *= 2u32;
    term /= &sqrt_t;
    acc -= &term;
    // + lambda (2 + w (3 ln2 - ln t)) / (2 t)
    let mut log8t = Float::with_val(prec, 3 * &ln_2);
    log8t -= &ln_t;
    let mut term = Float::with_val(prec, &w * &log8t);
    term += 2u32;
    term *= lam;
    term *= &inv_t;
    term /= 2u32;
    acc += &term;
    // - lambda (6w + 1) / (3 sqrt(2n) t^(3/2))
    let mut poly = Float::with_val(prec, 6 * &w);
    poly += 1u32;
    let mut den = Float::with_val(prec, &sqrt_2n * &sqrt_t);
    den *= t;
    den *= 3u32;
    let mut term = Float::with_val(prec, lam * &poly);
    term /= &den;
    acc -= &term;
    // - lambda^2 (2w - 3) / (12 n t)
    let mut poly = Float::with_val(prec, 2 * &w);
    poly -= 3u32;
    let mut term = Float::with_val(prec, &lam_sq * &poly);
    term *= &inv_n;
    term *= &inv_t;
    term /= 12u32;
    acc -= &term;
    // + lambda [20w(3w+1) + 3] / (120 sqrt2 n^(3/2) t^(5/2))
    let mut poly = Float::with_val(prec, 3 * &w);
    poly += 1u32;
    poly *= &w;
    poly *= 20u32;
    poly += 3u32;
    let mut den = Float::with_val(prec, n * &n.clone().sqrt());
    den *= &sqrt2;
    den *= Float::with_val(prec, t.square_ref());
    den *= &sqrt_t;
    den *= 120u32;
    let mut term = Float::with_val(prec, lam * &poly);
    term /= &den;
    acc += &term;
    // + lambda^2 (2w^2 - 12w - 3) / (48 n^2 t^2)
    let mut poly = Float::with_val(prec, 2 * &w_sq);
    poly -= Float::with_val(prec, 12 * &w);
    poly -= 3u32;
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= Float::with_val(prec, inv_t.square_ref());
    term *= &lam_sq;
    term *= &poly;
    term /= 48u32;
    acc += &term;

    acc
}

/// `beta_n = (n + lambda)/2 + sum_k a_k n^(-k/2)` with, writing
/// `w = lambda t`:
/// `a_1 = -lambda / (2 sqrt2 sqrt t)`, `a_2 = 0`,
/// `a_3 = lambda (2w+1) / (8 sqrt2 t^(3/2))`,
/// `a_4 = -lambda^2 / (8t)`,
/// `a_5 = -lambda [(12 lambda^2 - 5) t^2 + 12 lambda t + 3]
///        / (64 sqrt2 t^(5/2))`,
/// `a_6 = lambda^2 (2w+1) / (8 t^2)`,
/// `a_7 = 5 lambda [2 lambda (4 lambda^2 - 5) t^3 + (4 lambda^2 - 7) t^2
///        + 6 lambda t + 1] / (256 sqrt2 t^(7/2))`.
fn beta_series(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let w = Float::with_val(prec, lam * t);
    let t_sq = Float::with_val(prec, t.square_ref());
    let t_cu = Float::with_val(prec, &t_sq * t);
    let sqrt_t = Float::with_val(prec, t.sqrt_ref());
    let inv_sqrt_n = Float::with_val(prec, n.sqrt_ref()).recip();
    let inv_n = Float::with_val(prec, n.recip_ref());

    let mut acc = Float::with_val(prec, n + lam);
    acc /= 2u32;

    // a1 / n^(1/2), a1 = -lambda / (2 sqrt2 sqrt t)
    let mut a = Float::with_val(prec, 2 * &sqrt2);
    a *= &sqrt_t;
    a = Float::with_val(prec, lam / &a);
    let mut pow = inv_sqrt_n.clone();
    acc -= Float::with_val(prec, &a * &pow);

    // a3 / n^(3/2), a3 = lambda (2w+1) / (8 sqrt2 t^(3/2))
    pow *= &inv_n;
    let mut num = Float::with_val(prec, 2 * &w);
    num += 1u32;
    num *= lam;
    let mut den = Float::with_val(prec, 8 * &sqrt2);
    den *= t;
    den *= &sqrt_t;
    acc += Float::with_val(prec, &num / &den) * &pow;

    // a4 / n^2, a4 = -lambda^2 / (8t)
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &lam_sq;
    term /= Float::with_val(prec, 8 * t);
    acc -= &term;

    // a5 / n^(5/2), a5 = -lambda [(12 l^2 - 5) t^2 + 12 l t + 3]
    //              / (64 sqrt2 t^(5/2))
    pow *= &inv_n;
    let mut num = Float::with_val(prec, 12 * &lam_sq);
    num -= 5u32;
    num *= &t_sq;
    num += Float::with_val(prec, 12 * &w);
    num += 3u32;
    num *= lam;
    let mut den = Float::with_val(prec, 64 * &sqrt2);
    den *= &t_sq;
    den *= &sqrt_t;
    acc -= Float::with_val(prec, &num / &den) * &pow;

    // a6 / n^3, a6 = lambda^2 (2w+1) / (8 t^2)
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &inv_n;
    let mut num = Float::with_val(prec, 2 * &w);
    num += 1u32;
    num *= &lam_sq;
    term *= &num;
    term /= Float::with_val(prec, 8 * &t_sq);
    acc += &term;

    // a7 / n^(7/2), a7 = 5 lambda [2 l (4 l^2 - 5) t^3 + (4 l^2 - 7) t^2
    //               + 6 l t + 1] / (256 sqrt2 t^(7/2))
    pow *= &inv_n;
    let four_l2 = Float::with_val(prec, 4 * &lam_sq);
    let mut num = Float::with_val(prec, &four_l2 - 5u32);
    num *= lam;
    num *= 2u32;
    num *= &t_cu;
    let mut mid = Float::with_val(prec, &four_l2 - 7u32);
    mid *= &t_sq;
    num += &mid;
    num += Float::with_val(prec, 6 * &w);
    num += 1u32;
    num *= lam;
    num *= 5u32;
    let mut den = Float::with_val(prec, 256 * &sqrt2);
    den *= &t_cu;
    den *= &sqrt_t;
    acc += Float::with_val(prec, &num / &den) * &pow;

    acc
}

/// `p(n,t) = -n^2/4 + (1 - 2 lambda) n/4 + lambda sqrt n / sqrt(2t)
///  + lambda [(1 - lambda) t - 2] / (4t)
///  + b1/n^(1/2) + b2/n + b3/n^(3/2) + b4/n^2 + b5/n^(5/2)` with
/// `b1 = lambda [(2 lambda - 1) t + 1] / (4 sqrt2 t^(3/2))`,
/// `b2 = -lambda^2 / (8t)`,
/// `b3 = lambda [(1 + 4 lambda - 4 lambda^2) t^2 + 2 (1 - 2 lambda) t - 1]
///       / (32 sqrt2 t^(5/2))`,
/// `b4 = lambda^2 [(2 lambda - 1) t + 1] / (16 t^2)`,
/// `b5 = lambda [(2 lambda - 1)(4 lambda^2 - 4 lambda - 5) t^3
///       + (4 lambda^2 - 12 lambda - 5) t^2 + 3 (2 lambda - 1) t + 1]
///       / (128 sqrt2 t^(7/2))`.
fn p_series(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let t_sq = Float::with_val(prec, t.square_ref());
    let t_cu = Float::with_val(prec, &t_sq * t);
    let sqrt_t = Float::with_val(prec, t.sqrt_ref());
    let sqrt_n = Float::with_val(prec, n.sqrt_ref());
    let inv_sqrt_n = Float::with_val(prec, sqrt_n.recip_ref());
    let inv_n = Float::with_val(prec, n.recip_ref());
    let two_l_m1 = {
        let mut x = Float::with_val(prec, 2 * lam);
        x -= 1u32;
        x
    };

    // -n^2/4 + (1 - 2 lambda) n / 4
    let mut acc = Float::with_val(prec, n.square_ref());
    acc = -acc;
    let mut lin = Float::with_val(prec, n * &two_l_m1);
    lin = -lin;
    acc += &lin;
    acc /= 4u32;
    // + lambda sqrt n / (sqrt2 sqrt t)
    let mut term = Float::with_val(prec, lam * &sqrt_n);
    term /= Float::with_val(prec, &sqrt2 * &sqrt_t);
    acc += &term;
    // + lambda [(1 - lambda) t - 2] / (4t)
    let mut num = Float::with_val(prec, 1u32 - lam);
    num *= t;
    num -= 2u32;
    num *= lam;
    acc += Float::with_val(prec, &num / Float::with_val(prec, 4 * t));

    // b1 / sqrt n
    let mut num = Float::with_val(prec, &two_l_m1 * t);
    num += 1u32;
    num *= lam;
    let mut den = Float::with_val(prec, 4 * &sqrt2);
    den *= t;
    den *= &sqrt_t;
    let mut pow = inv_sqrt_n.clone();
    acc += Float::with_val(prec, &num / &den) * &pow;

    // b2 / n = -lambda^2 / (8 t n)
    let mut term = Float::with_val(prec, &lam_sq * &inv_n);
    term /= Float::with_val(prec, 8 * t);
    acc -= &term;

    // b3 / n^(3/2)
    pow *= &inv_n;
    let mut num = Float::with_val(prec, 4 * lam);
    num += 1u32;
    num -= Float::with_val(prec, 4 * &lam_sq);
    num *= &t_sq;
    let mut mid = Float::with_val(prec, -2 * &two_l_m1);
    mid *= t;
    num += &mid;
    num -= 1u32;
    num *= lam;
    let mut den = Float::with_val(prec, 32 * &sqrt2);
    den *= &t_sq;
    den *= &sqrt_t;
    acc += Float::with_val(prec, &num / &den) * &pow;

    // b4 / n^2
    let mut num = Float::with_val(prec, &two_l_m1 * t);
    num += 1u32;
    num *= &lam_sq;
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &num;
    term /= Float::with_val(prec, 16 * &t_sq);
    acc += &term;

    // b5 / n^(5/2)
    pow *= &inv_n;
    let four_l2 = Float::with_val(prec, 4 * &lam_sq);
    let mut q1 = Float::with_val(prec, &four_l2 - Float::with_val(prec, 4 * lam));
    q1 -= 5u32;
    q1 *= &two_l_m1;
    q1 *= &t_cu;
    let mut q2 = Float::with_val(prec, &four_l2 - Float::with_val(prec, 12 * lam));
    q2 -= 5u32;
    q2 *= &t_sq;
    let mut q3 = Float::with_val(prec, 3 * &two_l_m1);
    q3 *= t;
    let mut num = Float::with_val(prec, &q1 + &q2);
    num += &q3;
    num += 1u32;
    num *= lam;
    let mut den = Float::with_val(prec, 128 * &sqrt2);
    den *= &t_cu;
    den *= &sqrt_t;
    acc += Float::with_val(prec, &num / &den) * &pow;

    acc
}

/// `H_n = -2 lambda sqrt(2nt) + lambda (w + 2) - lambda (2w+1)/sqrt(2nt)
///  + lambda^2/(2n) + ...` where, with `w = lambda t`:
/// the `(nt)^(-3/2)` coefficient is
/// `lambda [(4 lambda^2 - 1) t^2 + 4 lambda t + 1] / (8 sqrt2)`,
/// the `n^(-2)` coefficient is `-lambda^2 (2w+1) / (4 t)`, and the
/// `(nt)^(-5/2)` coefficient is
/// `-lambda [2 lambda (4 lambda^2 - 3) t^3 + (4 lambda^2 - 5) t^2
///  + 6 lambda t + 1] / (32 sqrt2)`.
fn cap_h_series(n: &Float, t: &Float, lam: &Float, prec: u32) -> Float {
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let w = Float::with_val(prec, lam * t);
    let t_sq = Float::with_val(prec, t.square_ref());
    let t_cu = Float::with_val(prec, &t_sq * t);
    let nt = Float::with_val(prec, n * t);
    let sqrt_2nt = Float::with_val(prec, 2 * &nt).sqrt();
    let inv_nt = Float::with_val(prec, nt.recip_ref());
    let inv_n = Float::with_val(prec, n.recip_ref());
    let four_l2 = Float::with_val(prec, 4 * &lam_sq);

    // -2 lambda sqrt(2nt)
    let mut acc = Float::with_val(prec, lam * &sqrt_2nt);
    acc *= 2u32;
    acc = -acc;
    // + lambda (w + 2)
    let mut term = Float::with_val(prec, &w + 2u32);
    term *= lam;
    acc += &term;
    // - lambda (2w+1) / sqrt(2nt)
    let mut num = Float::with_val(prec, 2 * &w);
    num += 1u32;
    num *= lam;
    acc -= Float::with_val(prec, &num / &sqrt_2nt);
    // + lambda^2 / (2n)
    let mut term = Float::with_val(prec, &lam_sq * &inv_n);
    term /= 2u32;
    acc += &term;
    // + lambda [(4 l^2 - 1) t^2 + 4 l t + 1] / (8 sqrt2 (nt)^(3/2))
    let mut pow = Float::with_val(prec, nt.sqrt_ref()).recip();
    pow *= &inv_nt; // (nt)^(-3/2)
    let mut num = Float::with_val(prec, &four_l2 - 1u32);
    num *= &t_sq;
    num += Float::with_val(prec, 4 * &w);
    num += 1u32;
    num *= lam;
    let mut term = Float::with_val(prec, &num * &pow);
    term /= Float::with_val(prec, 8 * &sqrt2);
    acc += &term;
    // - lambda^2 (2w+1) / (4 n^2 t)
    let mut num = Float::with_val(prec, 2 * &w);
    num += 1u32;
    num *= &lam_sq;
    let mut term = Float::with_val(prec, inv_n.square_ref());
    term *= &num;
    term /= Float::with_val(prec, 4 * t);
    acc -= &term;
    // - lambda [2 l (4 l^2 - 3) t^3 + (4 l^2 - 5) t^2 + 6 l t + 1]
    //   / (32 sqrt2 (nt)^(5/2))
    pow *= &inv_nt; // (nt)^(-5/2)
    let mut num = Float::with_val(prec, &four_l2 - 3u32);
    num *= lam;
    num *= 2u32;
    num *= &t_cu;
    let mut mid = Float::with_val(prec, &four_l2 - 5u32);
    mid *= &t_sq;
    num += &mid;
    num += Float::with_val(prec, 6 * &w);
    num += 1u32;
    num *= lam;
    let mut term = Float::with_val(prec, &num * &pow);
    term /= Float::with_val(prec, 32 * &sqrt2);
    acc -= &term;

    acc
}
