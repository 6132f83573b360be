//! Checks evaluated directly on one table: ladder-relation identities,
//! difference equations in `n`, closed-form initial conditions, and the
//! polynomial ODE in `z`.

use super::{finish_report, row_from_terms, row_relative, CheckId, ResidualReport, Tolerances};
use crate::error::{Error, Result};
use crate::numerics::{kummer_u, NumericContext};
use crate::ortho::OrthoTable;
use rug::Float;

/// Verify the algebraic ladder identities linking `r_n`, `R_n`, `beta_n`,
/// `p(n)` and `H_n` over `n` in `[1, N-1]`:
///
/// * `aux-r-pair-sum`: `R_n = t (2 lambda - r_n - r_{n+1})`
/// * `aux-r-beta`:     `beta_n = (n + r_n) / 2`
/// * `aux-product`:    `t r_n (2 lambda - r_n) = beta_n R_n R_{n-1}`
/// * `aux-quadratic`:  `t r_n^2 - 2 (1 + lambda t) r_n + H_n
///                      + 2 beta_n (R_n + R_{n-1}) = 0`
/// * `aux-mixed`:      `beta_n R_n = r_n + 2 t p(n) + 2 t beta_n beta_{n-1}`
pub fn check_ladder_identities(table: &OrthoTable) -> Result<Vec<ResidualReport>> {
    let n_max = table.n_max();
    if n_max < 3 {
        return Err(Error::Domain(format!(
            "ladder identities need a table of size at least 3, got {n_max}"
        )));
    }
    let prec = table.precision_bits();
    let params = table.params();
    let t = params.t();
    let lam = params.lambda();
    let tols = Tolerances::standard(prec);

    let mut pair_sum = Vec::new();
    let mut r_beta = Vec::new();
    let mut product = Vec::new();
    let mut quadratic = Vec::new();
    let mut mixed = Vec::new();

    let two_lam_t = Float::with_val(prec, lam * t) * 2u32;
    for n in 1..n_max {
        let r_n = table.r(n)?;
        let r_n1 = table.r(n + 1)?;
        let cr_n = table.cap_r(n)?;
        let cr_nm1 = table.cap_r(n - 1)?;
        let b_n = table.beta(n)?;
        let b_nm1 = table.beta(n - 1)?;
        let h_n = table.cap_h(n)?;
        let p_n = table.p(n)?;

        pair_sum.push(row_from_terms(
            &[
                cr_n.clone(),
                -two_lam_t.clone(),
                Float::with_val(prec, t * r_n),
                Float::with_val(prec, t * r_n1),
            ],
            prec,
        ));

        r_beta.push(row_from_terms(
            &[
                Float::with_val(prec, 2 * b_n),
                Float::with_val(prec, -(n as i64)),
                -r_n.clone(),
            ],
            prec,
        ));

        let t_rn = Float::with_val(prec, t * r_n);
        product.push(row_from_terms(
            &[
                Float::with_val(prec, &two_lam_t * r_n),
                -Float::with_val(prec, &t_rn * r_n),
                -Float::with_val(prec, b_n * cr_n) * cr_nm1,
            ],
            prec,
        ));

        // 2 (1 + lambda t) r_n
        let mut lin = Float::with_val(prec, lam * t);
        lin += 1u32;
        lin *= 2u32;
        lin *= r_n;
        quadratic.push(row_from_terms(
            &[
                Float::with_val(prec, &t_rn * r_n),
                -lin,
                h_n.clone(),
                Float::with_val(prec, b_n * cr_n) * 2u32,
                Float::with_val(prec, b_n * cr_nm1) * 2u32,
            ],
            prec,
        ));

        let mut bb = Float::with_val(prec, b_n * b_nm1);
        bb *= t;
        bb *= 2u32;
        let mut tp = Float::with_val(prec, t * p_n);
        tp *= 2u32;
        mixed.push(row_from_terms(
            &[Float::with_val(prec, b_n * cr_n), -r_n.clone(), -tp, -bb],
            prec,
        ));
    }

    let lo = 1;
    let hi = n_max - 1;
    Ok(vec![
        finish_report(CheckId::AuxRPairSum, lo, hi, params, &pair_sum, &tols.algebraic, prec),
        finish_report(CheckId::AuxRBeta, lo, hi, params, &r_beta, &tols.algebraic, prec),
        finish_report(CheckId::AuxProduct, lo, hi, params, &product, &tols.algebraic, prec),
        finish_report(CheckId::AuxQuadratic, lo, hi, params, &quadratic, &tols.algebraic, prec),
        finish_report(CheckId::AuxMixed, lo, hi, params, &mixed, &tols.algebraic, prec),
    ])
}

/// Verify the second-order difference equations in `n` together with their
/// closed-form initial conditions:
///
/// * `beta-difference`, over `n` in `[1, N-1]`:
///   `(n - 2 beta_n)(n + 2 lambda - 2 beta_n)
///    + t beta_n (2n+1+2 lambda - 2 beta_n - 2 beta_{n+1})
///                (2n-1+2 lambda - 2 beta_{n-1} - 2 beta_n) = 0`
/// * `p-difference`, over `n` in `[1, N-1]`:
///   `(n - 2p(n) + 2p(n+1)) (n + 2 lambda - 2p(n) + 2p(n+1))
///    = (2n-1+2 lambda - 2p(n-1) + 2p(n+1))
///      [n - 2(t+1)p(n) + 2p(n+1) - 2t (p(n-1)-p(n))(p(n)-p(n+1))]`
/// * `discrete-p4`, over `n` in `[1, N-1]`: the `beta` recursion in
///   `x_n = 2 beta_n - n - lambda`, cleared of its denominator:
///   `t (x_n + x_{n-1})(x_n + x_{n+1})(x_n + n + lambda)
///    + 2 (x_n^2 - lambda^2) = 0`
/// * `beta1-kummer`: `beta_1 = U(3/2, 5/2+lambda, 1/t)
///    / (2 t U(1/2, 3/2+lambda, 1/t))`, compared relatively
/// * `p2-kummer`: `p(2) = -beta_1` with the same right-hand side
pub fn check_difference_equations(
    table: &OrthoTable,
    ctx: &NumericContext,
) -> Result<Vec<ResidualReport>> {
    let n_max = table.n_max();
    if n_max < 3 {
        return Err(Error::Domain(format!(
            "difference equations need a table of size at least 3, got {n_max}"
        )));
    }
    let prec = table.precision_bits();
    let params = table.params();
    let t = params.t();
    let lam = params.lambda();
    let tols = Tolerances::standard(prec);

    let two_lam = Float::with_val(prec, 2 * lam);
    let x_at = |k: usize| -> Result<Float> {
        let mut x = Float::with_val(prec, 2 * table.beta(k)?);
        x -= k as i64;
        x -= lam;
        Ok(x)
    };

    let mut beta_rows = Vec::new();
    let mut p_rows = Vec::new();
    let mut dp4_rows = Vec::new();
    for n in 1..n_max {
        let b_nm1 = table.beta(n - 1)?;
        let b_n = table.beta(n)?;
        let b_n1 = table.beta(n + 1)?;

        // (n - 2 beta_n)(n + 2 lambda - 2 beta_n)
        let mut u = Float::with_val(prec, -2 * b_n);
        u += n as i64;
        let v = Float::with_val(prec, &u + &two_lam);
        let first = Float::with_val(prec, &u * &v);
        // t beta_n (2n+1+2l-2b_n-2b_{n+1}) (2n-1+2l-2b_{n-1}-2b_n)
        let mut w1 = Float::with_val(prec, -2 * b_n);
        w1 -= Float::with_val(prec, 2 * b_n1);
        w1 += 2 * n as i64 + 1;
        w1 += &two_lam;
        let mut w2 = Float::with_val(prec, -2 * b_nm1);
        w2 -= Float::with_val(prec, 2 * b_n);
        w2 += 2 * n as i64 - 1;
        w2 += &two_lam;
        let mut second = Float::with_val(prec, t * b_n);
        second *= &w1;
        second *= &w2;
        beta_rows.push(row_from_terms(&[first, second], prec));

        let p_nm1 = table.p(n - 1)?;
        let p_n = table.p(n)?;
        let p_n1 = table.p(n + 1)?;
        // a = n - 2p(n) + 2p(n+1); b = a + 2 lambda
        let mut a = Float::with_val(prec, 2 * p_n1);
        a -= Float::with_val(prec, 2 * p_n);
        a += n as i64;
        let b = Float::with_val(prec, &a + &two_lam);
        let left = Float::with_val(prec, &a * &b);
        // c = 2n - 1 + 2 lambda - 2p(n-1) + 2p(n+1)
        let mut c = Float::with_val(prec, 2 * p_n1);
        c -= Float::with_val(prec, 2 * p_nm1);
        c += 2 * n as i64 - 1;
        c += &two_lam;
        // e = n - 2(t+1)p(n) + 2p(n+1) - 2t (p(n-1)-p(n))(p(n)-p(n+1))
        let mut e = Float::with_val(prec, 2 * p_n1);
        let mut tp = Float::with_val(prec, t + 1u32);
        tp *= 2u32;
        tp *= p_n;
        e -= &tp;
        e += n as i64;
        let d1 = Float::with_val(prec, p_nm1 - p_n);
        let d2 = Float::with_val(prec, p_n - p_n1);
        let mut cross = Float::with_val(prec, &d1 * &d2);
        cross *= t;
        cross *= 2u32;
        e -= &cross;
        let right = Float::with_val(prec, &c * &e);
        p_rows.push(row_from_terms(&[left, -right], prec));

        let x_nm1 = x_at(n - 1)?;
        let x_n = x_at(n)?;
        let x_n1 = x_at(n + 1)?;
        // t (x_n + x_{n-1})(x_n + x_{n+1})(x_n + n + lambda) + 2(x_n^2 - l^2)
        let s1 = Float::with_val(prec, &x_n + &x_nm1);
        let s2 = Float::with_val(prec, &x_n + &x_n1);
        let mut s3 = Float::with_val(prec, &x_n + lam);
        s3 += n as i64;
        let mut prod = Float::with_val(prec, &s1 * &s2);
        prod *= &s3;
        prod *= t;
        let sq = Float::with_val(prec, x_n.square_ref()) * 2u32;
        let mut lam_sq = Float::with_val(prec, lam.square_ref());
        lam_sq *= 2u32;
        dp4_rows.push(row_from_terms(&[prod, sq, -lam_sq], prec));
    }

    // Initial conditions through the confluent hypergeometric representation.
    let uctx = if ctx.precision_bits() >= prec {
        ctx.clone()
    } else {
        NumericContext::new(prec)?
    };
    let z = Float::with_val(prec, t.recip_ref());
    let half = Float::with_val(prec, 0.5f64);
    let a_top = Float::with_val(prec, 1.5f64);
    let mut b_top = Float::with_val(prec, 2.5f64);
    b_top += lam;
    let a_bot = half.clone();
    let mut b_bot = Float::with_val(prec, 1.5f64);
    b_bot += lam;
    let top = kummer_u(&a_top, &b_top, &z, &uctx)?;
    let bot = kummer_u(&a_bot, &b_bot, &z, &uctx)?;
    let mut beta1_ref = Float::with_val(prec, &top / &bot);
    beta1_ref /= t;
    beta1_ref /= 2u32;

    let beta1_row = row_relative(table.beta(1)?, &beta1_ref, prec);
    let p2_ref = -beta1_ref.clone();
    let p2_row = row_relative(table.p(2)?, &p2_ref, prec);

    let lo = 1;
    let hi = n_max - 1;
    Ok(vec![
        finish_report(CheckId::BetaDifference, lo, hi, params, &beta_rows, &tols.algebraic, prec),
        finish_report(CheckId::PDifference, lo, hi, params, &p_rows, &tols.algebraic, prec),
        finish_report(CheckId::DiscreteP4, lo, hi, params, &dp4_rows, &tols.algebraic, prec),
        finish_report(CheckId::Beta1Kummer, 1, 1, params, &[beta1_row], &tols.initial, prec),
        finish_report(CheckId::P2Kummer, 2, 2, params, &[p2_row], &tols.initial, prec),
    ])
}

/// Verify that the stored recurrence data satisfy the second-order ODE in
/// `z` obeyed by the monic polynomial `P_n`:
///
/// `P_n'' - (v' + A_n'/A_n) P_n' + (B_n' - B_n A_n'/A_n
///   + sum_{j<n} A_j) P_n = 0`
///
/// with `v'(z) = 2z - 2 lambda t z / (1 + t z^2)`,
/// `A_n(z) = 2 - R_n / (1 + t z^2)`,
/// `B_n(z) = t z r_n / (1 + t z^2)`, and the closed-form partial sum
///
/// `sum_{j<n} A_j = 2n
///   + 2 (n - 2 beta_n)(n + 2 lambda - 2 beta_n)
///     / [(2n+1+2 lambda - 2 beta_n - 2 beta_{n+1}) (1 + t z^2)]
///   - [n^2 t + 2n (1 + lambda t) + 2 (t-2) beta_n
///      - 4 t beta_n beta_{n+1}] / (1 + t z^2)`.
///
/// One report: the max residual over the given `z` samples.
pub fn check_polynomial_ode(
    n: usize,
    z_samples: &[Float],
    table: &OrthoTable,
) -> Result<ResidualReport> {
    if n + 1 > table.n_max() {
        return Err(Error::Domain(format!(
            "polynomial ODE check needs n + 1 <= table size, got n = {n}, size = {}",
            table.n_max()
        )));
    }
    if z_samples.is_empty() {
        return Err(Error::Config("polynomial ODE check needs z samples".into()));
    }
    let prec = table.precision_bits();
    let params = table.params();
    let t = params.t();
    let lam = params.lambda();
    let tols = Tolerances::standard(prec);

    let b_n = table.beta(n)?;
    let b_n1 = table.beta(n + 1)?;
    let r_n = table.r(n)?;
    let cr_n = table.cap_r(n)?;
    let two_lam = Float::with_val(prec, 2 * lam);

    // g = 2n + 1 + 2 lambda - 2 beta_n - 2 beta_{n+1} (the R_n / t factor).
    let mut g = Float::with_val(prec, -2 * b_n);
    g -= Float::with_val(prec, 2 * b_n1);
    g += 2 * n as i64 + 1;
    g += &two_lam;
    if g.cmp0() == Some(std::cmp::Ordering::Equal) {
        return Err(Error::Pole(format!(
            "partial-sum denominator vanishes at n = {n}"
        )));
    }

    // z-independent numerators.
    let mut u = Float::with_val(prec, -2 * b_n);
    u += n as i64;
    let mut v = Float::with_val(prec, &u + &two_lam);
    v *= &u;
    v *= 2u32; // 2 (n - 2 beta_n)(n + 2 lambda - 2 beta_n)
    // k = n^2 t + 2n (1 + lambda t) + 2 (t - 2) beta_n - 4 t beta_n beta_{n+1}
    let mut k = Float::with_val(prec, (n * n) as i64);
    k *= t;
    let mut lin = Float::with_val(prec, lam * t);
    lin += 1u32;
    lin *= 2 * n as i64;
    k += &lin;
    let mut tm2 = Float::with_val(prec, t - 2u32);
    tm2 *= 2u32;
    tm2 *= b_n;
    k += &tm2;
    let mut bb = Float::with_val(prec, b_n * b_n1);
    bb *= t;
    bb *= 4u32;
    k -= &bb;

    let mut rows = Vec::with_capacity(z_samples.len());
    for z in z_samples {
        let z = Float::with_val(prec, z);
        let (p0, p1, p2) = table.eval_polynomial(n, &z)?;
        let z_sq = Float::with_val(prec, z.square_ref());
        let mut q = Float::with_val(prec, t * &z_sq);
        q += 1u32; // 1 + t z^2
        let q_sq = Float::with_val(prec, q.square_ref());

        // v'(z) = 2z - 2 lambda t z / q
        let mut vp = Float::with_val(prec, lam * t);
        vp *= &z;
        vp *= 2u32;
        vp /= &q;
        vp = Float::with_val(prec, 2 * &z) - vp;

        // A = 2 - R_n / q;  A' = 2 t z R_n / q^2
        let mut a_val = Float::with_val(prec, cr_n / &q);
        a_val = Float::with_val(prec, 2u32 - a_val);
        if a_val.cmp0() == Some(std::cmp::Ordering::Equal) {
            return Err(Error::Pole(format!(
                "coefficient A_n vanishes at z = {z}"
            )));
        }
        let mut a_der = Float::with_val(prec, t * &z);
        a_der *= cr_n;
        a_der *= 2u32;
        a_der /= &q_sq;
        let ratio = Float::with_val(prec, &a_der / &a_val);

        // B = t z r_n / q;  B' = t r_n (1 - t z^2) / q^2
        let mut b_val = Float::with_val(prec, t * &z);
        b_val *= r_n;
        b_val /= &q;
        let mut b_der = Float::with_val(prec, t * r_n);
        let mut one_m = Float::with_val(prec, t * &z_sq);
        one_m = Float::with_val(prec, 1u32 - one_m);
        b_der *= &one_m;
        b_der /= &q_sq;

        // Partial sum of A_j.
        let mut s = Float::with_val(prec, 2 * n as i64);
        let mut mid = Float::with_val(prec, &g * &q);
        mid = Float::with_val(prec, &v / &mid);
        s += &mid;
        s -= Float::with_val(prec, &k / &q);

        rows.push(row_from_terms(
            &[
                p2.clone(),
                -Float::with_val(prec, &vp * &p1),
                -Float::with_val(prec, &ratio * &p1),
                Float::with_val(prec, &b_der * &p0),
                -Float::with_val(prec, &b_val * &ratio) * &p0,
                Float::with_val(prec, &s * &p0),
            ],
            prec,
        ));
    }

    Ok(finish_report(
        CheckId::OdePolynomial,
        n,
        n,
        params,
        &rows,
        &tols.polynomial_ode,
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::WeightParams;
    use crate::ortho::build_ortho_table;

    fn generic_table(n_max: usize) -> OrthoTable {
        let ctx = NumericContext::new(512).unwrap();
        let params = WeightParams::new(ctx.float(0.5), ctx.float(0.7)).unwrap();
        build_ortho_table(n_max, &params, &ctx).unwrap()
    }

    #[test]
    fn ladder_identities_hold_on_generic_table() {
        let table = generic_table(8);
        let reports = check_ladder_identities(&table).unwrap();
        assert_eq!(reports.len(), 5);
        for report in &reports {
            assert!(
                report.pass && !report.degenerate,
                "{} residual {}",
                report.check_id,
                report.residual
            );
        }
    }

    #[test]
    fn difference_equations_and_inits_hold() {
        let ctx = NumericContext::new(512).unwrap();
        let table = generic_table(8);
        let reports = check_difference_equations(&table, &ctx).unwrap();
        assert_eq!(reports.len(), 5);
        for report in &reports {
            assert!(
                report.pass && !report.degenerate,
                "{} residual {}",
                report.check_id,
                report.residual
            );
        }
    }

    #[test]
    fn gaussian_case_reduces_to_hermite_equation() {
        let ctx = NumericContext::new(512).unwrap();
        let params = WeightParams::new(ctx.float(1), ctx.float(0)).unwrap();
        let table = build_ortho_table(7, &params, &ctx).unwrap();
        let z_samples = [ctx.float(0.3), ctx.float(1.1), ctx.float(2.7)];
        let report = check_polynomial_ode(5, &z_samples, &table).unwrap();
        assert!(report.pass, "residual {}", report.residual);
    }

    #[test]
    fn polynomial_ode_holds_on_generic_table() {
        let table = generic_table(8);
        let z_samples = [
            Float::with_val(512, 0.3f64),
            Float::with_val(512, 1.1f64),
            Float::with_val(512, 2.7f64),
        ];
        let report = check_polynomial_ode(6, &z_samples, &table).unwrap();
        assert!(report.pass, "residual {}", report.residual);
        assert!(!report.degenerate);
    }

    #[test]
    fn undersized_table_is_rejected() {
        let ctx = NumericContext::new(512).unwrap();
        let params = WeightParams::new(ctx.float(1), ctx.float(0.5)).unwrap();
        let table = build_ortho_table(4, &params, &ctx).unwrap();
        let z = [ctx.float(1)];
        assert!(matches!(
            check_polynomial_ode(4, &z, &table),
            Err(Error::Domain(_))
        ));
    }
}
