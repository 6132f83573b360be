//! Numerical verification of the identity web satisfied by the
//! orthogonal-polynomial system.
//!
//! Every check turns one equation into a dimensionless residual evaluated on
//! [`OrthoTable`] data.  The catalog:
//!
//! **Algebraic identities** (exact in exact arithmetic, evaluated directly on
//! one table; [`check_ladder_identities`], [`check_difference_equations`],
//! [`check_polynomial_ode`]):
//!
//! * `aux-r-pair-sum`:   `R_n = t (2 lambda - r_n - r_{n+1})`
//! * `aux-r-beta`:       `beta_n = (n + r_n) / 2`
//! * `aux-product`:      `t r_n (2 lambda - r_n) = beta_n R_n R_{n-1}`
//! * `aux-quadratic`:    `t r_n^2 - 2(1 + lambda t) r_n + H_n
//!                        + 2 beta_n (R_n + R_{n-1}) = 0`
//! * `aux-mixed`:        `beta_n R_n = r_n + 2 t p(n) + 2 t beta_n beta_{n-1}`
//! * `beta-difference`:  second-order difference equation for `beta_n`
//! * `p-difference`:     second-order difference equation for `p(n)`
//! * `discrete-p4`:      the same `beta` recursion in the shifted variable
//!                       `x_n = 2 beta_n - n - lambda` (a discrete Painleve
//!                       IV form), cleared of denominators
//! * `beta1-kummer`, `p2-kummer`: the closed-form initial conditions
//!                       `beta_1 = U(3/2, 5/2+lambda, 1/t) /
//!                        (2t U(1/2, 3/2+lambda, 1/t))`, `p(2) = -beta_1`
//! * `ode-polynomial`:   the second-order ODE in `z` satisfied by `P_n`
//!
//! **First-order t-evolution** (derivatives by finite differences over
//! freshly built tables at shifted `t`; [`check_t_evolution`]):
//!
//! * `dln-h`:        `2 t^2 (ln h_n)' = 2 lambda t - R_n`
//! * `dp-aux`:       `2 t^2 p'(n) = r_n - beta_n R_n`
//! * `dp-product`:   `2 t p'(n) = -2 p(n) - 2 beta_n beta_{n-1}`
//! * `dbeta`:        `2 t^2 beta_n' = beta_n (R_{n-1} - R_n)`
//! * `dln-hankel`:   `H_n = 2 t^2 (ln D_n)' - 2 n lambda t`
//! * `riccati-r`:    `t^2 r_n' = t r_n (2 lambda - r_n) / R_n
//!                    - (n + r_n) R_n / 2`
//! * `riccati-cap-r`: `2 t^2 R_n' = R_n^2 + (2 t r_n - 2 lambda t + t - 2) R_n
//!                    - 4 t r_n + 4 lambda t`
//! * `r-quadratic-h`: `t r_n^2 + 2(1 - lambda t) r_n + 2 t H_n' - H_n = 0`
//!                    (asserted as a root test, no branch selection)
//!
//! **Second-order ODEs** (first and second finite-difference derivatives, in
//! `t` or in `s = 1/t`; [`check_painleve_v`], [`check_sigma_form`]):
//!
//! * `ode-cap-r`:    the quintic-nonlinear ODE for `R_n(t)`
//! * `painleve-v`:   `W_n(s) = R_n(1/s) / (R_n(1/s) - 2)` satisfies Painleve V
//!                   with parameters `(1/8, -lambda^2/2, n+lambda+1/2, -1/2)`
//! * `ode-r`, `ode-beta`, `ode-cap-h`: squared-bracket ODEs for `r_n`,
//!                   `beta_n`, `H_n`
//! * `ode-p`:        the flat second-order ODE for `p(n,t)`
//! * `sigma-form`:   `sigma_n(s) = p(n, 1/s) + n(n-1)/4` satisfies the
//!                   Jimbo-Miwa-Okamoto sigma-form of Painleve V with
//!                   `nu = (0, -n/2, lambda, -(n-1)/2)`
//!
//! **Normalization.**  A flat equation `sum_k T_k = 0` reports
//! `|sum T_k| / sum |T_k|`; an equation of squared-bracket shape `L = R`
//! reports `|L - R| / (|L| + |R| + 1)`.  When an equation degenerates (all
//! terms below the working floor `2^(-precision/2)`, as happens for most
//! checks at `lambda = 0` where `r = R = H = 0`), the report carries
//! residual `0`, scale `1`, and the `degenerate` flag instead of a
//! meaningless `0/0` quotient.
//!
//! The names `norm-split-*`, `det-split-*`, `aux-split-*`, `poly-split-*`
//! belong to the half-line reduction checks in [`crate::laguerre`].

mod algebraic;
mod differential;

pub use algebraic::{check_difference_equations, check_ladder_identities, check_polynomial_ode};
pub use differential::{check_painleve_v, check_sigma_form, check_t_evolution};

use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::numerics::NumericContext;
use rug::Float;
use serde::{Deserialize, Serialize};

/// Identifier of one verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    AuxRPairSum,
    AuxRBeta,
    AuxProduct,
    AuxQuadratic,
    AuxMixed,
    BetaDifference,
    PDifference,
    DiscreteP4,
    Beta1Kummer,
    P2Kummer,
    DLnH,
    DPAux,
    DPProduct,
    DBeta,
    DLnHankel,
    RiccatiR,
    RiccatiCapR,
    RQuadraticH,
    OdeCapR,
    PainleveV,
    OdeR,
    OdeBeta,
    OdeCapH,
    OdeP,
    SigmaForm,
    OdePolynomial,
    NormSplitEven,
    NormSplitOdd,
    DetSplitEven,
    DetSplitOdd,
    AuxSplitEven,
    AuxSplitOdd,
    PolySplitEven,
    PolySplitOdd,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::AuxRPairSum => "aux-r-pair-sum",
            CheckId::AuxRBeta => "aux-r-beta",
            CheckId::AuxProduct => "aux-product",
            CheckId::AuxQuadratic => "aux-quadratic",
            CheckId::AuxMixed => "aux-mixed",
            CheckId::BetaDifference => "beta-difference",
            CheckId::PDifference => "p-difference",
            CheckId::DiscreteP4 => "discrete-p4",
            CheckId::Beta1Kummer => "beta1-kummer",
            CheckId::P2Kummer => "p2-kummer",
            CheckId::DLnH => "dln-h",
            CheckId::DPAux => "dp-aux",
            CheckId::DPProduct => "dp-product",
            CheckId::DBeta => "dbeta",
            CheckId::DLnHankel => "dln-hankel",
            CheckId::RiccatiR => "riccati-r",
            CheckId::RiccatiCapR => "riccati-cap-r",
            CheckId::RQuadraticH => "r-quadratic-h",
            CheckId::OdeCapR => "ode-cap-r",
            CheckId::PainleveV => "painleve-v",
            CheckId::OdeR => "ode-r",
            CheckId::OdeBeta => "ode-beta",
            CheckId::OdeCapH => "ode-cap-h",
            CheckId::OdeP => "ode-p",
            CheckId::SigmaForm => "sigma-form",
            CheckId::OdePolynomial => "ode-polynomial",
            CheckId::NormSplitEven => "norm-split-even",
            CheckId::NormSplitOdd => "norm-split-odd",
            CheckId::DetSplitEven => "det-split-even",
            CheckId::DetSplitOdd => "det-split-odd",
            CheckId::AuxSplitEven => "aux-split-even",
            CheckId::AuxSplitOdd => "aux-split-odd",
            CheckId::PolySplitEven => "poly-split-even",
            CheckId::PolySplitOdd => "poly-split-odd",
        }
    }
}

impl std::fmt::Display for CheckId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Residual tolerances per check family.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Checks evaluated directly on one table (ladder identities,
    /// difference equations).
    pub algebraic: Float,
    /// Closed-form initial conditions, compared relatively.
    pub initial: Float,
    /// First-order t-evolution checks (one finite difference).
    pub derivative: Float,
    /// Second-order ODE checks (finite second differences).
    pub ode: Float,
    /// The polynomial ODE in `z` (algebraic in table data).
    pub polynomial_ode: Float,
    /// Half-line reduction: norm and determinant splits (algebraic).
    pub bridge_split: Float,
    /// Half-line reduction: polynomial value split (algebraic, value-level).
    pub bridge_poly: Float,
    /// Half-line reduction: aux-quantity identification (quadrature-limited).
    pub bridge_aux: Float,
}

impl Tolerances {
    /// Default budgets at a working precision comfortably above 400 bits.
    pub fn standard(prec: u32) -> Self {
        let lit = |s: &str| Float::with_val(prec, Float::parse(s).unwrap());
        Tolerances {
            algebraic: lit("1e-100"),
            initial: lit("1e-110"),
            derivative: lit("1e-60"),
            ode: lit("1e-50"),
            polynomial_ode: lit("1e-80"),
            bridge_split: lit("1e-100"),
            bridge_poly: lit("1e-80"),
            bridge_aux: lit("1e-60"),
        }
    }
}

/// Outcome of one check over a range of `n`.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub check_id: CheckId,
    pub n_lo: usize,
    pub n_hi: usize,
    pub t: Float,
    pub lambda: Float,
    /// Max over `n` of the per-`n` normalized residual.
    pub residual: Float,
    /// Largest per-`n` term-sum scale (1 when degenerate).
    pub scale: Float,
    pub tolerance: Float,
    pub pass: bool,
    /// Every probed `n` had all terms below the working floor.
    pub degenerate: bool,
}

/// Serialized form of [`ResidualReport`] with decimal strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResidualReportRepr {
    pub check_id: String,
    pub n_lo: usize,
    pub n_hi: usize,
    pub t: String,
    pub lambda: String,
    pub residual: String,
    pub scale: String,
    pub tolerance: String,
    pub pass: bool,
    pub degenerate: bool,
}

impl ResidualReport {
    pub fn to_repr(&self) -> ResidualReportRepr {
        ResidualReportRepr {
            check_id: self.check_id.as_str().to_owned(),
            n_lo: self.n_lo,
            n_hi: self.n_hi,
            t: self.t.to_string_radix(10, None),
            lambda: self.lambda.to_string_radix(10, None),
            residual: self.residual.to_string_radix(10, None),
            scale: self.scale.to_string_radix(10, None),
            tolerance: self.tolerance.to_string_radix(10, None),
            pass: self.pass,
            degenerate: self.degenerate,
        }
    }

    pub fn csv_header() -> &'static str {
        "check_id,n_lo,n_hi,t,lambda,residual,scale,tolerance,pass,degenerate"
    }

    pub fn to_csv_row(&self) -> String {
        let r = self.to_repr();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.check_id,
            r.n_lo,
            r.n_hi,
            r.t,
            r.lambda,
            r.residual,
            r.scale,
            r.tolerance,
            r.pass,
            r.degenerate
        )
    }
}

/// One evaluated equation instance: signed defect, term magnitude scale, and
/// whether every term sat below the working floor.
#[derive(Debug, Clone)]
pub(crate) struct ResidualRow {
    diff: Float,
    scale: Float,
    floored: bool,
}

/// Working floor below which an equation instance counts as degenerate:
/// `2^(-precision/2)`.
fn floor_at(prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
}

/// Row for a flat equation `sum_k terms[k] = 0`.
pub(crate) fn row_from_terms(terms: &[Float], prec: u32) -> ResidualRow {
    let mut diff = Float::with_val(prec, 0);
    let mut scale = Float::with_val(prec, 0);
    for term in terms {
        diff += term;
        scale += Float::with_val(prec, term.abs_ref());
    }
    diff.abs_mut();
    let floored = scale < floor_at(prec);
    ResidualRow { diff, scale, floored }
}

/// Row for a squared-bracket equation `lhs = rhs`, normalized by
/// `|lhs| + |rhs| + 1`.
pub(crate) fn row_from_sides(lhs: &Float, rhs: &Float, prec: u32) -> ResidualRow {
    let diff = Float::with_val(prec, lhs - rhs).abs();
    let mut mag = Float::with_val(prec, lhs.abs_ref());
    mag += Float::with_val(prec, rhs.abs_ref());
    let floored = mag < floor_at(prec);
    let scale = mag + 1u32;
    ResidualRow { diff, scale, floored }
}

/// Row for a relative comparison `got` vs `want` (initial conditions).
pub(crate) fn row_relative(got: &Float, want: &Float, prec: u32) -> ResidualRow {
    let diff = Float::with_val(prec, got - want).abs();
    let scale = Float::with_val(prec, want.abs_ref());
    let floored = scale < floor_at(prec);
    ResidualRow { diff, scale, floored }
}

/// Assemble a report from per-`n` rows.
pub(crate) fn finish_report(
    check_id: CheckId,
    n_lo: usize,
    n_hi: usize,
    params: &WeightParams,
    rows: &[ResidualRow],
    tolerance: &Float,
    prec: u32,
) -> ResidualReport {
    let degenerate = rows.iter().all(|r| r.floored);
    let mut residual = Float::with_val(prec, 0);
    let mut scale = Float::with_val(prec, 1);
    if !degenerate {
        let mut first = true;
        for row in rows.iter().filter(|r| !r.floored) {
            let q = Float::with_val(prec, &row.diff / &row.scale);
            if q > residual {
                residual = q;
            }
            if first || row.scale > scale {
                scale = row.scale.clone();
            }
            first = false;
        }
    }
    let pass = residual <= *tolerance;
    ResidualReport {
        check_id,
        n_lo,
        n_hi,
        t: params.t().clone(),
        lambda: params.lambda().clone(),
        residual,
        scale,
        tolerance: tolerance.clone(),
        pass,
        degenerate,
    }
}

/// A degenerate stand-in report (used when a transform is undefined, e.g.
/// the Painleve V variable change at `lambda = 0`): residual 0, scale 1,
/// passing, flagged.
pub(crate) fn degenerate_report(
    check_id: CheckId,
    n_lo: usize,
    n_hi: usize,
    params: &WeightParams,
    tolerance: &Float,
    prec: u32,
) -> ResidualReport {
    ResidualReport {
        check_id,
        n_lo,
        n_hi,
        t: params.t().clone(),
        lambda: params.lambda().clone(),
        residual: Float::with_val(prec, 0),
        scale: Float::with_val(prec, 1),
        tolerance: tolerance.clone(),
        pass: true,
        degenerate: true,
    }
}

/// Run the complete verification battery on one `(t, lambda)`:
///
/// * ladder identities and difference equations over the whole table,
/// * the polynomial ODE at `n = min(10, N-1)` on default `z` samples,
/// * t-evolution at `n` in `{2, 5, 12}` (clipped to the table size),
/// * both second-order ODE suites at `n` in `{2, 5, 10}` (clipped, `n >= 2`).
///
/// Checks whose variable change is undefined at `lambda = 0` are reported
/// degenerate rather than failed.
pub fn run_full_verification(
    n_max: usize,
    params: &WeightParams,
    ctx: &NumericContext,
    tols: &Tolerances,
) -> Result<Vec<ResidualReport>> {
    if n_max < 3 {
        return Err(Error::Domain(format!(
            "verification needs a table of size at least 3, got {n_max}"
        )));
    }
    let table = crate::ortho::build_ortho_table(n_max, params, ctx)?;
    let mut reports = check_ladder_identities(&table)?;
    reports.extend(check_difference_equations(&table, ctx)?);

    let z_samples: Vec<Float> = [0.3, 1.1, 2.7].iter().map(|&z| ctx.float(z)).collect();
    let n_ode = n_max.saturating_sub(1).min(10).max(1);
    reports.push(check_polynomial_ode(n_ode, &z_samples, &table)?);

    for n in [2usize, 5, 12] {
        if n + 1 > n_max {
            continue;
        }
        reports.extend(check_t_evolution(n, params, ctx)?);
    }

    for n in [2usize, 5, 10] {
        if n + 1 > n_max {
            continue;
        }
        match check_painleve_v(n, params, ctx) {
            Ok(list) => reports.extend(list),
            Err(Error::Degenerate(_)) => {
                reports.push(degenerate_report(
                    CheckId::OdeCapR,
                    n,
                    n,
                    params,
                    &tols.ode,
                    ctx.precision_bits(),
                ));
                reports.push(degenerate_report(
                    CheckId::PainleveV,
                    n,
                    n,
                    params,
                    &tols.ode,
                    ctx.precision_bits(),
                ));
            }
            Err(e) => return Err(e),
        }
        reports.extend(check_sigma_form(n, params, ctx)?);
    }

    for report in &mut reports {
        let tol = match report.check_id {
            CheckId::AuxRPairSum
            | CheckId::AuxRBeta
            | CheckId::AuxProduct
            | CheckId::AuxQuadratic
            | CheckId::AuxMixed
            | CheckId::BetaDifference
            | CheckId::PDifference
            | CheckId::DiscreteP4 => &tols.algebraic,
            CheckId::Beta1Kummer | CheckId::P2Kummer => &tols.initial,
            CheckId::DLnH
            | CheckId::DPAux
            | CheckId::DPProduct
            | CheckId::DBeta
            | CheckId::DLnHankel
            | CheckId::RiccatiR
            | CheckId::RiccatiCapR
            | CheckId::RQuadraticH => &tols.derivative,
            CheckId::OdeCapR
            | CheckId::PainleveV
            | CheckId::OdeR
            | CheckId::OdeBeta
            | CheckId::OdeCapH
            | CheckId::OdeP
            | CheckId::SigmaForm => &tols.ode,
            CheckId::OdePolynomial => &tols.polynomial_ode,
            CheckId::NormSplitEven
            | CheckId::NormSplitOdd
            | CheckId::DetSplitEven
            | CheckId::DetSplitOdd => &tols.bridge_split,
            CheckId::AuxSplitEven | CheckId::AuxSplitOdd => &tols.bridge_aux,
            CheckId::PolySplitEven | CheckId::PolySplitOdd => &tols.bridge_poly,
        };
        report.tolerance = tol.clone();
        report.pass = report.residual <= report.tolerance;
    }
    Ok(reports)
}
