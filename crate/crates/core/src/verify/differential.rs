//! Checks involving derivatives in `t` (or in `s = 1/t`): first-order
//! evolution equations, the Riccati pair, and the second-order ODE /
//! Painleve V / sigma-form layer.
//!
//! Derivatives are central finite differences over tables rebuilt from
//! scratch at shifted arguments, so a passing residual ties together two
//! independent computations: the moment/factorization pipeline at nearby
//! `t` values and the differential structure being checked.

use super::{
    degenerate_report, finish_report, row_from_sides, row_from_terms, CheckId, ResidualReport,
    Tolerances,
};
use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::numerics::{FdOrder, NumericContext};
use crate::ortho::{build_ortho_table, OrthoTable};
use rug::Float;

/// Orthogonality tables on a central stencil `x0 + k h`, after mapping
/// `x -> t(x)`; differentiates any scalar extracted per table.
struct Stencil {
    /// Offset order: `k = -2..=2` (five-point) or `k = -1..=1` (three-point).
    tables: Vec<OrthoTable>,
    h: Float,
    order: FdOrder,
    prec: u32,
}

impl Stencil {
    fn build<M>(
        n_table: usize,
        lambda: &Float,
        ctx: &NumericContext,
        x0: &Float,
        map: M,
    ) -> Result<Stencil>
    where
        M: Fn(&Float) -> Float,
    {
        let prec = ctx.precision_bits();
        let h = Float::with_val(prec, ctx.fd_step());
        let offsets: &[i32] = match ctx.fd_order() {
            FdOrder::Four => &[-2, -1, 0, 1, 2],
            FdOrder::Two => &[-1, 0, 1],
        };
        let mut tables = Vec::with_capacity(offsets.len());
        for &k in offsets {
            let mut x = Float::with_val(prec, &h * k);
            x += x0;
            let t = map(&x);
            let params = WeightParams::new(t, lambda.clone())?;
            tables.push(build_ortho_table(n_table, &params, ctx)?);
        }
        Ok(Stencil {
            tables,
            h,
            order: ctx.fd_order(),
            prec,
        })
    }

    fn center(&self) -> &OrthoTable {
        &self.tables[self.tables.len() / 2]
    }

    /// Extract one scalar per stencil table and return
    /// `(value at center, first derivative, second derivative)`.
    fn derive<F>(&self, extract: F) -> Result<(Float, Float, Float)>
    where
        F: Fn(&OrthoTable) -> Result<Float>,
    {
        let prec = self.prec;
        let f: Vec<Float> = self
            .tables
            .iter()
            .map(&extract)
            .collect::<Result<Vec<_>>>()?;
        let (value, d1, d2) = match self.order {
            FdOrder::Four => {
                // f' ~ (f[-2] - 8 f[-1] + 8 f[1] - f[2]) / (12 h)
                let mut d1 = Float::with_val(prec, &f[0] - &f[4]);
                d1 += Float::with_val(prec, 8 * &f[3]);
                d1 -= Float::with_val(prec, 8 * &f[1]);
                let mut den = Float::with_val(prec, 12 * &self.h);
                d1 /= &den;
                // f'' ~ (-f[-2] + 16 f[-1] - 30 f[0] + 16 f[1] - f[2])
                //        / (12 h^2)
                let mut d2 = Float::with_val(prec, 16 * &f[1]);
                d2 += Float::with_val(prec, 16 * &f[3]);
                d2 -= Float::with_val(prec, 30 * &f[2]);
                d2 -= &f[0];
                d2 -= &f[4];
                den = Float::with_val(prec, self.h.square_ref());
                den *= 12u32;
                d2 /= &den;
                (f[2].clone(), d1, d2)
            }
            FdOrder::Two => {
                let mut d1 = Float::with_val(prec, &f[2] - &f[0]);
                let den = Float::with_val(prec, 2 * &self.h);
                d1 /= &den;
                let mut d2 = Float::with_val(prec, &f[0] + &f[2]);
                d2 -= Float::with_val(prec, 2 * &f[1]);
                let den = Float::with_val(prec, self.h.square_ref());
                d2 /= &den;
                (f[1].clone(), d1, d2)
            }
        };
        Ok((value, d1, d2))
    }
}

/// Verify the first-order evolution equations in `t` at one `n`:
///
/// * `dln-h`:         `2 t^2 (ln h_n)' = 2 lambda t - R_n`
/// * `dp-aux`:        `2 t^2 p'(n) = r_n - beta_n R_n`
/// * `dp-product`:    `2 t p'(n) = -2 p(n) - 2 beta_n beta_{n-1}`
/// * `dbeta`:         `2 t^2 beta_n' = beta_n (R_{n-1} - R_n)`
/// * `dln-hankel`:    `H_n = 2 t^2 (ln D_n)' - 2 n lambda t`
/// * `riccati-r`:     `t^2 r_n' = t r_n (2 lambda - r_n) / R_n
///                     - (n + r_n) R_n / 2` (degenerate at `lambda = 0`,
///                     where `R_n` vanishes identically)
/// * `riccati-cap-r`: `2 t^2 R_n' = R_n^2 + (2 t r_n - 2 lambda t + t - 2)
///                     R_n - 4 t r_n + 4 lambda t`
/// * `r-quadratic-h`: `t r_n^2 + 2 (1 - lambda t) r_n + 2 t H_n' - H_n = 0`,
///                     a root test that involves no branch selection
pub fn check_t_evolution(
    n: usize,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<Vec<ResidualReport>> {
    if n < 1 {
        return Err(Error::Domain(
            "t-evolution checks need n >= 1".into(),
        ));
    }
    let prec = ctx.precision_bits();
    let tols = Tolerances::standard(prec);
    let stencil = Stencil::build(n + 1, params.lambda(), ctx, params.t(), |x| {
        Float::with_val(ctx.precision_bits(), x)
    })?;
    let center = stencil.center();
    let t = params.t();
    let lam = params.lambda();

    let (_, lnh_p, _) = stencil.derive(|tb| Ok(Float::with_val(prec, tb.h(n)?.ln_ref())))?;
    let (p_c, p_p, _) = stencil.derive(|tb| Ok(tb.p(n)?.clone()))?;
    let (beta_c, beta_p, _) = stencil.derive(|tb| Ok(tb.beta(n)?.clone()))?;
    let (r_c, r_p, _) = stencil.derive(|tb| Ok(tb.r(n)?.clone()))?;
    let (cr_c, cr_p, _) = stencil.derive(|tb| Ok(tb.cap_r(n)?.clone()))?;
    let (_, lnd_p, _) = stencil.derive(|tb| Ok(tb.log_d(n)?.clone()))?;
    let (ch_c, ch_p, _) = stencil.derive(|tb| Ok(tb.cap_h(n)?.clone()))?;
    let beta_m = center.beta(n - 1)?;
    let cr_m = center.cap_r(n - 1)?;

    let t_sq = Float::with_val(prec, t.square_ref());
    let two_t_sq = Float::with_val(prec, 2 * &t_sq);
    let lam_t = Float::with_val(prec, lam * t);

    let mut reports = Vec::with_capacity(8);

    // 2 t^2 (ln h_n)' - 2 lambda t + R_n = 0
    reports.push(finish_report(
        CheckId::DLnH,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                Float::with_val(prec, &two_t_sq * &lnh_p),
                Float::with_val(prec, -2 * &lam_t),
                cr_c.clone(),
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // 2 t^2 p' - r_n + beta_n R_n = 0
    reports.push(finish_report(
        CheckId::DPAux,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                Float::with_val(prec, &two_t_sq * &p_p),
                -r_c.clone(),
                Float::with_val(prec, &beta_c * &cr_c),
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // 2 t p' + 2 p + 2 beta_n beta_{n-1} = 0
    let mut tp = Float::with_val(prec, t * &p_p);
    tp *= 2u32;
    reports.push(finish_report(
        CheckId::DPProduct,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                tp,
                Float::with_val(prec, 2 * &p_c),
                Float::with_val(prec, &beta_c * beta_m) * 2u32,
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // 2 t^2 beta' - beta_n R_{n-1} + beta_n R_n = 0
    reports.push(finish_report(
        CheckId::DBeta,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                Float::with_val(prec, &two_t_sq * &beta_p),
                -Float::with_val(prec, &beta_c * cr_m),
                Float::with_val(prec, &beta_c * &cr_c),
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // H_n - 2 t^2 (ln D_n)' + 2 n lambda t = 0
    let mut nlt = Float::with_val(prec, 2 * &lam_t);
    nlt *= n as i64;
    reports.push(finish_report(
        CheckId::DLnHankel,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                ch_c.clone(),
                -Float::with_val(prec, &two_t_sq * &lnd_p),
                nlt,
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // t^2 r' = t r (2 lambda - r) / R - (n + r) R / 2
    if lam.cmp0() == Some(std::cmp::Ordering::Equal)
        || cr_c.cmp0() == Some(std::cmp::Ordering::Equal)
    {
        reports.push(degenerate_report(
            CheckId::RiccatiR,
            n,
            n,
            params,
            &tols.derivative,
            prec,
        ));
    } else {
        let mut frac = Float::with_val(prec, 2 * lam);
        frac -= &r_c;
        frac *= &r_c;
        frac *= t;
        frac /= &cr_c;
        let mut half = Float::with_val(prec, &r_c + n as i64);
        half *= &cr_c;
        half /= 2u32;
        reports.push(finish_report(
            CheckId::RiccatiR,
            n,
            n,
            params,
            &[row_from_terms(
                &[Float::with_val(prec, &t_sq * &r_p), -frac, half],
                prec,
            )],
            &tols.derivative,
            prec,
        ));
    }

    // 2 t^2 R' - R^2 - (2 t r - 2 lambda t + t - 2) R + 4 t r - 4 lambda t = 0
    let mut coeff = Float::with_val(prec, t * &r_c);
    coeff *= 2u32;
    coeff -= Float::with_val(prec, 2 * &lam_t);
    coeff += t;
    coeff -= 2u32;
    let mut four_tr = Float::with_val(prec, t * &r_c);
    four_tr *= 4u32;
    reports.push(finish_report(
        CheckId::RiccatiCapR,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                Float::with_val(prec, &two_t_sq * &cr_p),
                -Float::with_val(prec, cr_c.square_ref()),
                -Float::with_val(prec, &coeff * &cr_c),
                four_tr,
                Float::with_val(prec, -4 * &lam_t),
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    // t r^2 + 2 (1 - lambda t) r + 2 t H' - H = 0
    let mut lin = Float::with_val(prec, 1u32 - &lam_t);
    lin *= 2u32;
    lin *= &r_c;
    let mut thp = Float::with_val(prec, t * &ch_p);
    thp *= 2u32;
    reports.push(finish_report(
        CheckId::RQuadraticH,
        n,
        n,
        params,
        &[row_from_terms(
            &[
                Float::with_val(prec, r_c.square_ref()) * t,
                lin,
                thp,
                -ch_c.clone(),
            ],
            prec,
        )],
        &tols.derivative,
        prec,
    ));

    Ok(reports)
}

/// Verify the second-order ODE for `R_n(t)` (`ode-cap-r`) and, through the
/// variable change `s = 1/t`, `W_n(s) = R_n(1/s) / (R_n(1/s) - 2)`, the
/// Painleve V equation (`painleve-v`) with parameters
/// `(1/8, -lambda^2/2, n + lambda + 1/2, -1/2)`.
///
/// Errors with [`Error::Degenerate`] when the transform is undefined:
/// at `lambda = 0` (where `R_n` vanishes identically) or whenever
/// `|R_n|` or `|R_n - 2|` falls below `1e-8` at the evaluation point.
pub fn check_painleve_v(
    n: usize,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<Vec<ResidualReport>> {
    if n < 1 {
        return Err(Error::Domain("Painleve V check needs n >= 1".into()));
    }
    let prec = ctx.precision_bits();
    let tols = Tolerances::standard(prec);
    let t = params.t();
    let lam = params.lambda();
    if lam.cmp0() == Some(std::cmp::Ordering::Equal) {
        return Err(Error::Degenerate(
            "R_n vanishes identically at lambda = 0; the Painleve V variable \
             change W = R/(R-2) is undefined"
                .into(),
        ));
    }

    let stencil_t = Stencil::build(n + 1, lam, ctx, t, |x| {
        Float::with_val(ctx.precision_bits(), x)
    })?;
    let (cr_c, cr_p, cr_pp) = stencil_t.derive(|tb| Ok(tb.cap_r(n)?.clone()))?;

    let guard = Float::with_val(prec, 1e-8f64);
    let near_two = Float::with_val(prec, &cr_c - 2u32).abs();
    if Float::with_val(prec, cr_c.abs_ref()) < guard || near_two < guard {
        return Err(Error::Degenerate(format!(
            "R_{n} = {} sits within 1e-8 of a fixed point of W = R/(R-2)",
            cr_c.to_string_radix(10, Some(12))
        )));
    }

    let mut reports = Vec::with_capacity(2);

    // 4 t^4 R (R-2) R'' - 4 t^4 (R-1) (R')^2 + 4 t^3 R (R-2) R' - R^5
    //   + [(2n+1+2 lambda) t + 5] R^4 - 4 [(2n+1+2 lambda) t + 2] R^3
    //   + [(1-4 lambda^2) t^2 + 4 (2n+1+2 lambda) t + 4] R^2
    //   + 16 lambda^2 t^2 (R-1) = 0
    {
        let r = &cr_c;
        let t2 = Float::with_val(prec, t.square_ref());
        let t3 = Float::with_val(prec, &t2 * t);
        let t4 = Float::with_val(prec, &t3 * t);
        let r2 = Float::with_val(prec, r.square_ref());
        let r3 = Float::with_val(prec, &r2 * r);
        let r4 = Float::with_val(prec, &r2 * &r2);
        let r5 = Float::with_val(prec, &r4 * r);
        let rm2 = Float::with_val(prec, r - 2u32);
        let rm1 = Float::with_val(prec, r - 1u32);
        let lam_sq = Float::with_val(prec, lam.square_ref());
        // m = (2n + 1 + 2 lambda) t
        let mut m = Float::with_val(prec, 2 * lam);
        m += 2 * n as i64 + 1;
        m *= t;

        let mut t1 = Float::with_val(prec, &t4 * r);
        t1 *= &rm2;
        t1 *= &cr_pp;
        t1 *= 4u32;
        let mut t2a = Float::with_val(prec, cr_p.square_ref());
        t2a *= &rm1;
        t2a *= &t4;
        t2a *= 4u32;
        let mut t3a = Float::with_val(prec, &t3 * r);
        t3a *= &rm2;
        t3a *= &cr_p;
        t3a *= 4u32;
        let mut t5 = Float::with_val(prec, &m + 5u32);
        t5 *= &r4;
        let mut t6 = Float::with_val(prec, &m + 2u32);
        t6 *= &r3;
        t6 *= 4u32;
        let mut quad = Float::with_val(prec, 4 * &lam_sq);
        quad = Float::with_val(prec, 1u32 - quad);
        quad *= &t2;
        quad += Float::with_val(prec, 4 * &m);
        quad += 4u32;
        let t7 = Float::with_val(prec, &quad * &r2);
        let mut t8 = Float::with_val(prec, &lam_sq * &t2);
        t8 *= &rm1;
        t8 *= 16u32;

        reports.push(finish_report(
            CheckId::OdeCapR,
            n,
            n,
            params,
            &[row_from_terms(&[t1, -t2a, t3a, -r5, t5, -t6, t7, t8], prec)],
            &tols.ode,
            prec,
        ));
    }

    // Painleve V for W(s), s = 1/t:
    // W'' = (3W-1)(W')^2 / (2W(W-1)) - W'/s
    //       + (W-1)^2/s^2 * (W/8 - lambda^2/(2W))
    //       + (n + lambda + 1/2) W / s - W (W+1) / (2 (W-1))
    {
        let s0 = Float::with_val(prec, t.recip_ref());
        let stencil_s = Stencil::build(n + 1, lam, ctx, &s0, |x| {
            Float::with_val(ctx.precision_bits(), x.recip_ref())
        })?;
        let (w, w_p, w_pp) = stencil_s.derive(|tb| {
            let r = tb.cap_r(n)?;
            let den = Float::with_val(prec, r - 2u32);
            if den.cmp0() == Some(std::cmp::Ordering::Equal) {
                return Err(Error::Pole("R_n = 2 inside the Painleve V stencil".into()));
            }
            Ok(Float::with_val(prec, r / &den))
        })?;
        let wm1 = Float::with_val(prec, &w - 1u32);
        let lam_sq = Float::with_val(prec, lam.square_ref());

        // (3W - 1)(W')^2 / (2 W (W-1))
        let mut term1 = Float::with_val(prec, 3 * &w);
        term1 -= 1u32;
        term1 *= Float::with_val(prec, w_p.square_ref());
        let mut den = Float::with_val(prec, &w * &wm1);
        den *= 2u32;
        term1 /= &den;
        // -W'/s
        let term2 = -Float::with_val(prec, &w_p / &s0);
        // (W-1)^2 / s^2 * (W/8 - lambda^2 / (2W))
        let mut inner = Float::with_val(prec, &w / 8u32);
        let mut sub = Float::with_val(prec, &lam_sq / &w);
        sub /= 2u32;
        inner -= &sub;
        let mut term3 = Float::with_val(prec, wm1.square_ref());
        term3 *= &inner;
        term3 /= Float::with_val(prec, s0.square_ref());
        // (n + lambda + 1/2) W / s
        let mut mu3 = Float::with_val(prec, lam + n as i64);
        mu3 += 0.5f64;
        let mut term4 = Float::with_val(prec, &mu3 * &w);
        term4 /= &s0;
        // -W (W+1) / (2 (W-1))
        let mut term5 = Float::with_val(prec, &w + 1u32);
        term5 *= &w;
        let den5 = Float::with_val(prec, 2 * &wm1);
        term5 /= &den5;
        term5 = -term5;

        reports.push(finish_report(
            CheckId::PainleveV,
            n,
            n,
            params,
            &[row_from_terms(&[-w_pp, term1, term2, term3, term4, term5], prec)],
            &tols.ode,
            prec,
        ));
    }

    Ok(reports)
}

/// Verify the second-order ODE layer obtained by eliminating the auxiliary
/// quantities: squared-bracket ODEs for `r_n` (`ode-r`), `beta_n`
/// (`ode-beta`), `H_n` (`ode-cap-h`), the flat ODE for `p(n,t)` (`ode-p`),
/// and — through `s = 1/t`, `sigma_n(s) = p(n, 1/s) + n(n-1)/4` — the
/// Jimbo-Miwa-Okamoto sigma-form of Painleve V (`sigma-form`) with root
/// parameters `nu = (0, -n/2, lambda, -(n-1)/2)`.
///
/// At `lambda = 0` the `r` and `beta` forms degenerate (both brackets
/// vanish); they are reported with the degenerate flag, not failed.
pub fn check_sigma_form(
    n: usize,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<Vec<ResidualReport>> {
    if n < 2 {
        return Err(Error::Domain(
            "sigma-form checks need n >= 2".into(),
        ));
    }
    let prec = ctx.precision_bits();
    let tols = Tolerances::standard(prec);
    let t = params.t();
    let lam = params.lambda();
    let stencil_t = Stencil::build(n + 1, lam, ctx, t, |x| {
        Float::with_val(ctx.precision_bits(), x)
    })?;

    let (r_c, r_p, r_pp) = stencil_t.derive(|tb| Ok(tb.r(n)?.clone()))?;
    let (b_c, b_p, b_pp) = stencil_t.derive(|tb| Ok(tb.beta(n)?.clone()))?;
    let (h_c, h_p, h_pp) = stencil_t.derive(|tb| Ok(tb.cap_h(n)?.clone()))?;
    let (p_c, p_p, p_pp) = stencil_t.derive(|tb| Ok(tb.p(n)?.clone()))?;

    let t2 = Float::with_val(prec, t.square_ref());
    let t3 = Float::with_val(prec, &t2 * t);
    let t4 = Float::with_val(prec, &t3 * t);
    let t5 = Float::with_val(prec, &t4 * t);
    let lam_t = Float::with_val(prec, lam * t);
    let lam_sq = Float::with_val(prec, lam.square_ref());
    let ni = n as i64;

    let mut reports = Vec::with_capacity(5);

    // ode-r, squared-bracket form.  With
    //   c1 = 2 lambda t + 3t + 2 - 2 t r,
    //   c2 = 3 r^2 + 2 (n - 2 lambda) r - 2 n lambda,
    //   G = r (r + n) (r - 2 lambda):
    // [2 t^5 r' r'' + t^3 c1 (r')^2 - 2 t^2 c2 r'
    //   + 4 G (t r - lambda t - 1)]^2
    //   = t [t^3 (r')^2 - 2 G] [2 t^3 r'' + t c1 r' - 6 r^2
    //       - 4 (n - 2 lambda) r + 4 n lambda]^2
    {
        let mut c1 = Float::with_val(prec, 2 * &lam_t);
        c1 += Float::with_val(prec, 3 * t);
        c1 += 2u32;
        c1 -= Float::with_val(prec, t * &r_c) * 2u32;
        let mut c2 = Float::with_val(prec, r_c.square_ref());
        c2 *= 3u32;
        let mut nl = Float::with_val(prec, -2 * lam);
        nl += ni;
        c2 += Float::with_val(prec, &nl * &r_c) * 2u32;
        c2 -= Float::with_val(prec, 2 * ni * lam);
        let mut g = Float::with_val(prec, &r_c + ni);
        g *= &r_c;
        let mut rml = Float::with_val(prec, -2 * lam);
        rml += &r_c;
        g *= &rml;

        let mut a = Float::with_val(prec, &r_p * &r_pp);
        a *= &t5;
        a *= 2u32;
        let mut a2 = Float::with_val(prec, r_p.square_ref());
        a2 *= &c1;
        a2 *= &t3;
        a += &a2;
        let mut a3 = Float::with_val(prec, &c2 * &r_p);
        a3 *= &t2;
        a3 *= 2u32;
        a -= &a3;
        let mut a4 = Float::with_val(prec, t * &r_c);
        a4 -= &lam_t;
        a4 -= 1u32;
        a4 *= &g;
        a4 *= 4u32;
        a += &a4;

        let mut b = Float::with_val(prec, r_p.square_ref());
        b *= &t3;
        b -= Float::with_val(prec, 2 * &g);
        b *= t;

        let mut c = Float::with_val(prec, &t3 * &r_pp);
        c *= 2u32;
        let mut cc = Float::with_val(prec, &c1 * &r_p);
        cc *= t;
        c += &cc;
        c -= Float::with_val(prec, r_c.square_ref()) * 6u32;
        c -= Float::with_val(prec, &nl * &r_c) * 4u32;
        c += Float::with_val(prec, 4 * ni * lam);

        let lhs = Float::with_val(prec, a.square_ref());
        let mut rhs = Float::with_val(prec, c.square_ref());
        rhs *= &b;
        reports.push(finish_report(
            CheckId::OdeR,
            n,
            n,
            params,
            &[row_from_sides(&lhs, &rhs, prec)],
            &tols.ode,
            prec,
        ));
    }

    // ode-beta, squared-bracket form.  With
    //   c1 = (4 beta - 2n - 3 - 2 lambda) t - 2,
    //   c2 = 12 beta^2 - 8 (n + lambda) beta + n (n + 2 lambda),
    //   G = beta (2 beta - n) (2 beta - n - 2 lambda):
    // [2 t^5 beta' beta'' - t^3 c1 (beta')^2 - t^2 c2 beta'
    //   + 2 G ((2 beta - n - lambda) t - 1)]^2
    //   = t [t^3 (beta')^2 - G] [2 t^3 beta'' - t c1 beta' - c2]^2
    {
        let mut c1 = Float::with_val(prec, 4 * &b_c);
        c1 -= 2 * ni + 3;
        c1 -= Float::with_val(prec, 2 * lam);
        c1 *= t;
        c1 -= 2u32;
        let mut c2 = Float::with_val(prec, b_c.square_ref());
        c2 *= 12u32;
        let mut npl = Float::with_val(prec, lam + ni);
        npl *= 8u32;
        c2 -= Float::with_val(prec, &npl * &b_c);
        let mut nn = Float::with_val(prec, 2 * lam);
        nn += ni;
        nn *= ni;
        c2 += &nn;
        let two_b_m_n = {
            let mut x = Float::with_val(prec, 2 * &b_c);
            x -= ni;
            x
        };
        let mut shifted = two_b_m_n.clone();
        shifted -= Float::with_val(prec, 2 * lam);
        let mut g = Float::with_val(prec, &two_b_m_n * &shifted);
        g *= &b_c;

        let mut a = Float::with_val(prec, &b_p * &b_pp);
        a *= &t5;
        a *= 2u32;
        let mut a2 = Float::with_val(prec, b_p.square_ref());
        a2 *= &c1;
        a2 *= &t3;
        a -= &a2;
        let mut a3 = Float::with_val(prec, &c2 * &b_p);
        a3 *= &t2;
        a -= &a3;
        let mut a4 = Float::with_val(prec, &two_b_m_n - lam);
        a4 *= t;
        a4 -= 1u32;
        a4 *= &g;
        a4 *= 2u32;
        a += &a4;

        let mut b = Float::with_val(prec, b_p.square_ref());
        b *= &t3;
        b -= &g;
        b *= t;

        let mut c = Float::with_val(prec, &t3 * &b_pp);
        c *= 2u32;
        let mut cc = Float::with_val(prec, &c1 * &b_p);
        cc *= t;
        c -= &cc;
        c -= &c2;

        let lhs = Float::with_val(prec, a.square_ref());
        let mut rhs = Float::with_val(prec, c.square_ref());
        rhs *= &b;
        reports.push(finish_report(
            CheckId::OdeBeta,
            n,
            n,
            params,
            &[row_from_sides(&lhs, &rhs, prec)],
            &tols.ode,
            prec,
        ));
    }

    // ode-cap-h, squared-bracket form for H_n(t).
    {
        let h = &h_c;
        let hp = &h_p;
        let hpp = &h_pp;
        let t7 = Float::with_val(prec, &t5 * &t2);
        let h2 = Float::with_val(prec, h.square_ref());
        let h3 = Float::with_val(prec, &h2 * h);
        let hp2 = Float::with_val(prec, hp.square_ref());
        let hp3 = Float::with_val(prec, &hp2 * hp);
        let four_lam_sq = Float::with_val(prec, 4 * &lam_sq);
        let lam_t_m1 = Float::with_val(prec, &lam_t - 1u32);

        // a1 = 4 t^7 (H'')^2
        let mut a1 = Float::with_val(prec, hpp.square_ref());
        a1 *= &t7;
        a1 *= 4u32;
        // a2 = -4 t^4 (t^2 H' - t H + 2 lambda t - 2) H''
        let mut inner2 = Float::with_val(prec, &t2 * hp);
        inner2 -= Float::with_val(prec, t * h);
        inner2 += Float::with_val(prec, 2 * &lam_t);
        inner2 -= 2u32;
        let mut a2 = Float::with_val(prec, &inner2 * hpp);
        a2 *= &t4;
        a2 *= 4u32;
        // a3 = -t^3 [20 t H + (4 l^2 - 1) t^2 + 8 (4n - lambda) t + 4] (H')^2
        let mut inner3 = Float::with_val(prec, t * h);
        inner3 *= 20u32;
        let mut q3 = Float::with_val(prec, &four_lam_sq - 1u32);
        q3 *= &t2;
        inner3 += &q3;
        let mut lin3 = Float::with_val(prec, 4 * ni - lam);
        lin3 *= t;
        lin3 *= 8u32;
        inner3 += &lin3;
        inner3 += 4u32;
        let mut a3 = Float::with_val(prec, &inner3 * &hp2);
        a3 *= &t3;
        // a4 = 8 t^5 (H')^3
        let mut a4 = Float::with_val(prec, &t5 * &hp3);
        a4 *= 8u32;
        // a5 = 2 t^2 [8 t H^2 + ((4 l^2 - 1) t^2 + 16 (n - lambda) t + 12) H
        //      + 2 (lambda t - 3) (4 n (lambda t - 1) + t)] H'
        let mut inner5 = Float::with_val(prec, t * &h2);
        inner5 *= 8u32;
        let mut q5 = Float::with_val(prec, &four_lam_sq - 1u32);
        q5 *= &t2;
        let mut lin5 = Float::with_val(prec, ni - lam);
        lin5 *= t;
        lin5 *= 16u32;
        q5 += &lin5;
        q5 += 12u32;
        inner5 += Float::with_val(prec, &q5 * h);
        let mut tail5 = Float::with_val(prec, 4 * ni * &lam_t_m1);
        tail5 += t;
        let mut lt3 = Float::with_val(prec, &lam_t - 3u32);
        lt3 *= &tail5;
        lt3 *= 2u32;
        inner5 += &lt3;
        let mut a5 = Float::with_val(prec, &inner5 * hp);
        a5 *= &t2;
        a5 *= 2u32;
        // a6 = -4 t^2 H^3
        let mut a6 = Float::with_val(prec, &t2 * &h3);
        a6 *= 4u32;
        // a7 = t [(1 - 4 l^2) t^2 - 8 (n - 2 lambda) t - 12] H^2
        let mut q7 = Float::with_val(prec, 1u32 - &four_lam_sq);
        q7 *= &t2;
        let mut lin7 = Float::with_val(prec, -2 * lam);
        lin7 += ni;
        lin7 *= t;
        lin7 *= 8u32;
        q7 -= &lin7;
        q7 -= 12u32;
        let mut a7 = Float::with_val(prec, &q7 * &h2);
        a7 *= t;
        // a8 = -4 [lambda t^3 (2 n lambda - 2 l^2 + 1)
        //      - 2 t^2 (4 n lambda - 3 l^2 + 1) + 6 t (n - lambda) + 2] H
        let mut q8a = Float::with_val(prec, 2 * ni * lam);
        q8a -= Float::with_val(prec, 2 * &lam_sq);
        q8a += 1u32;
        let mut q8 = Float::with_val(prec, lam * &t3);
        q8 *= &q8a;
        let mut q8b = Float::with_val(prec, 4 * ni * lam);
        q8b -= Float::with_val(prec, 3 * &lam_sq);
        q8b += 1u32;
        q8b *= &t2;
        q8b *= 2u32;
        q8 -= &q8b;
        let mut q8c = Float::with_val(prec, ni - lam);
        q8c *= t;
        q8c *= 6u32;
        q8 += &q8c;
        q8 += 2u32;
        let mut a8 = Float::with_val(prec, &q8 * h);
        a8 *= 4u32;
        // a9 = 8 (lambda t - 1)^2 [2 n (lambda t - 1) + t]
        let mut tail9 = Float::with_val(prec, 2 * ni * &lam_t_m1);
        tail9 += t;
        let mut a9 = Float::with_val(prec, lam_t_m1.square_ref());
        a9 *= &tail9;
        a9 *= 8u32;

        let mut a = a1;
        a -= &a2;
        a -= &a3;
        a += &a4;
        a += &a5;
        a -= &a6;
        a += &a7;
        a -= &a8;
        a += &a9;

        // b = 16 [t H - 2 t^2 H' + (lambda t - 1)^2]
        let mut b = Float::with_val(prec, t * h);
        b -= Float::with_val(prec, 2 * &t2) * hp;
        b += Float::with_val(prec, lam_t_m1.square_ref());
        b *= 16u32;

        // c = 2 t^4 H'' - 2 t H^2 + t^2 (4 H - t + 8 n) H'
        //     + [(1 - 2 l^2) t^2 - 4 (n - lambda) t - 2] H
        //     - 2 (lambda t - 1) [2 n (lambda t - 1) + t]
        let mut c = Float::with_val(prec, &t4 * hpp);
        c *= 2u32;
        c -= Float::with_val(prec, t * &h2) * 2u32;
        let mut mid = Float::with_val(prec, 4 * h);
        mid -= t;
        mid += 8 * ni;
        mid *= &t2;
        mid *= hp;
        c += &mid;
        let mut qc = Float::with_val(prec, 2 * &lam_sq);
        qc = Float::with_val(prec, 1u32 - qc);
        qc *= &t2;
        let mut linc = Float::with_val(prec, ni - lam);
        linc *= t;
        linc *= 4u32;
        qc -= &linc;
        qc -= 2u32;
        c += Float::with_val(prec, &qc * h);
        let mut tailc = Float::with_val(prec, 2 * ni * &lam_t_m1);
        tailc += t;
        let mut lastc = Float::with_val(prec, &lam_t_m1 * &tailc);
        lastc *= 2u32;
        c -= &lastc;

        let lhs = Float::with_val(prec, a.square_ref());
        let mut rhs = Float::with_val(prec, c.square_ref());
        rhs *= &b;
        reports.push(finish_report(
            CheckId::OdeCapH,
            n,
            n,
            params,
            &[row_from_sides(&lhs, &rhs, prec)],
            &tols.ode,
            prec,
        ));
    }

    // ode-p, flat form:
    // 16 t^6 (p'')^2 + 64 t^5 p' p'' - 64 t^5 (p')^3
    //   - 4 t^2 (p')^2 [16 t^2 p + (2n+3+2l)(2n-5+2l) t^2 + 4 t (2n-1-2l) + 4]
    //   - 4 t p' [4 ((2n-1-2l) t + 2) p + n(n-1) ((2n-1+2l) t + 2)]
    //   - 16 p^2 - 8 n (n-1) p - n^2 (n-1)^2 = 0
    {
        let t6 = Float::with_val(prec, &t5 * t);
        let pp2 = Float::with_val(prec, p_pp.square_ref());
        let pd2 = Float::with_val(prec, p_p.square_ref());
        let pd3 = Float::with_val(prec, &pd2 * &p_p);
        let nn1 = ni * (ni - 1);

        let mut u1 = Float::with_val(prec, &t6 * &pp2);
        u1 *= 16u32;
        let mut u2 = Float::with_val(prec, &p_p * &p_pp);
        u2 *= &t5;
        u2 *= 64u32;
        let mut u3 = Float::with_val(prec, &t5 * &pd3);
        u3 *= 64u32;
        // bracket4 = 16 t^2 p + (2n+3+2l)(2n-5+2l) t^2 + 4 t (2n-1-2l) + 4
        let mut br4 = Float::with_val(prec, &t2 * &p_c);
        br4 *= 16u32;
        let mut f1 = Float::with_val(prec, 2 * lam);
        f1 += 2 * ni + 3;
        let mut f2 = Float::with_val(prec, 2 * lam);
        f2 += 2 * ni - 5;
        let mut ff = Float::with_val(prec, &f1 * &f2);
        ff *= &t2;
        br4 += &ff;
        let mut f3 = Float::with_val(prec, -2 * lam);
        f3 += 2 * ni - 1;
        f3 *= t;
        f3 *= 4u32;
        br4 += &f3;
        br4 += 4u32;
        let mut u4 = Float::with_val(prec, &pd2 * &br4);
        u4 *= &t2;
        u4 *= 4u32;
        // bracket5 = 4 ((2n-1-2l) t + 2) p + n(n-1) ((2n-1+2l) t + 2)
        let mut g1 = Float::with_val(prec, -2 * lam);
        g1 += 2 * ni - 1;
        g1 *= t;
        g1 += 2u32;
        let mut br5 = Float::with_val(prec, &g1 * &p_c);
        br5 *= 4u32;
        let mut g2 = Float::with_val(prec, 2 * lam);
        g2 += 2 * ni - 1;
        g2 *= t;
        g2 += 2u32;
        g2 *= nn1;
        br5 += &g2;
        let mut u5 = Float::with_val(prec, t * &p_p);
        u5 *= &br5;
        u5 *= 4u32;
        let mut u6 = Float::with_val(prec, p_c.square_ref());
        u6 *= 16u32;
        let mut u7 = Float::with_val(prec, 8 * &p_c);
        u7 *= nn1;
        let u8 = Float::with_val(prec, nn1).square();

        reports.push(finish_report(
            CheckId::OdeP,
            n,
            n,
            params,
            &[row_from_terms(&[u1, u2, -u3, -u4, -u5, -u6, -u7, -u8], prec)],
            &tols.ode,
            prec,
        ));
    }

    // sigma-form in s = 1/t:
    // (s sigma'')^2 = [sigma - s sigma' + 2 (sigma')^2
    //                  + (nu0+nu1+nu2+nu3) sigma']^2
    //                 - 4 (nu0 + sigma')(nu1 + sigma')(nu2 + sigma')
    //                     (nu3 + sigma')
    // with nu = (0, -n/2, lambda, -(n-1)/2),
    // sigma_n(s) = p(n, 1/s) + n (n-1) / 4.
    {
        let s0 = Float::with_val(prec, t.recip_ref());
        let stencil_s = Stencil::build(n + 1, lam, ctx, &s0, |x| {
            Float::with_val(ctx.precision_bits(), x.recip_ref())
        })?;
        let shift = Float::with_val(prec, (n * (n - 1)) as u64) / 4u32;
        let (sg, sg_p, sg_pp) = stencil_s.derive(|tb| {
            let mut v = tb.p(n)?.clone();
            v += &shift;
            Ok(v)
        })?;

        let nu1 = -Float::with_val(prec, ni) / 2u32;
        let nu3 = -Float::with_val(prec, ni - 1) / 2u32;
        let mut nu_sum = Float::with_val(prec, &nu1 + &nu3);
        nu_sum += lam;

        let mut lhs = Float::with_val(prec, &s0 * &sg_pp);
        lhs.square_mut();

        let mut inner = Float::with_val(prec, &sg - Float::with_val(prec, &s0 * &sg_p));
        inner += Float::with_val(prec, sg_p.square_ref()) * 2u32;
        inner += Float::with_val(prec, &nu_sum * &sg_p);
        let inner_sq = Float::with_val(prec, inner.square_ref());

        let mut prod = sg_p.clone(); // nu0 + sigma' with nu0 = 0
        prod *= Float::with_val(prec, &nu1 + &sg_p);
        prod *= Float::with_val(prec, lam + &sg_p);
        prod *= Float::with_val(prec, &nu3 + &sg_p);
        prod *= 4u32;

        let rhs = Float::with_val(prec, &inner_sq - &prod);
        reports.push(finish_report(
            CheckId::SigmaForm,
            n,
            n,
            params,
            &[row_from_sides(&lhs, &rhs, prec)],
            &tols.ode,
            prec,
        ));
    }

    Ok(reports)
}
