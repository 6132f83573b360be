//! Orthogonal-polynomial tables for the perturbed Gaussian weight.
//!
//! The monic polynomials `P_n` orthogonal with respect to
//! `w(x; t) = exp(-x^2) (1 + t x^2)^lambda` satisfy the symmetric three-term
//! recurrence
//!
//! ```text
//! x P_n(x) = P_{n+1}(x) + beta_n P_{n-1}(x),
//! ```
//!
//! with `beta_n = h_n / h_{n-1}` and `h_n = int P_n^2 w dx`.  All of that
//! data is recovered from the Hankel moment matrix `M[j][k] = mu_{j+k}`:
//! with the Cholesky factorization `M = L L^T` the pivots give
//! `h_n = L[n][n]^2`, the leading-minor determinants give
//! `D_n = prod_{j<n} h_j`, and everything else follows:
//!
//! * `p(n, t)`, the coefficient of `x^(n-2)` in `P_n`, via the telescoping
//!   sum `p(n) = -sum_{j<n} beta_j`;
//! * the ladder-operator auxiliary quantities
//!   `r_n = 2 beta_n - n` and
//!   `R_n = t (2n + 1 + 2 lambda - 2 beta_n - 2 beta_{n+1})`;
//! * `H_n = -sum_{j<n} R_j`, the logarithmic `t`-derivative of `D_n` up to
//!   an affine shift.
//!
//! `r_n` and `R_n` also have integral definitions (expectation values of
//! `1/(1 + t y^2)` against the orthonormal system); [`aux_integral_upper`]
//! and [`aux_integral_lower`] evaluate those by quadrature as an independent
//! oracle on the identities above.
//!
//! Because odd moments vanish, the moment matrix is checkerboard-sparse and
//! splits, after an even/odd permutation, into two half-size Hankel blocks;
//! [`BuildRoute::EvenOddSplit`] exploits that as a fast path and must agree
//! with the full factorization to rounding.
//!
//! Precision policy: a table of size `N` wants roughly `16 N + 64` bits (the
//! Hankel conditioning costs a bounded number of bits per degree);
//! [`policy_precision`] encodes `max(512, 64 + 16 N)` and
//! [`certify_table`] validates a build by rebuilding 128 bits higher.

use crate::error::{Error, Result};
use crate::moments::{moment, moment_table, WeightParams};
use crate::numerics::{integrate, Domain, NumericContext};
use rug::{Assign, Float};
use serde::{Deserialize, Serialize};

/// How to factor the moment matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildRoute {
    /// Cholesky of the full `(N+2) x (N+2)` Hankel matrix (the reference
    /// construction).
    FullCholesky,
    /// Cholesky of the two half-size blocks obtained from the even/odd
    /// permutation; must agree with [`BuildRoute::FullCholesky`] to
    /// rounding.
    EvenOddSplit,
}

/// Default precision for a table of size `n_max`: `max(512, 64 + 16 n_max)`.
pub fn policy_precision(n_max: usize) -> u32 {
    512u32.max(64 + 16 * n_max as u32)
}

/// A context suitable for building a table of size `n_max`: the given base
/// context, upgraded to at least [`policy_precision`] bits (tolerances
/// rescaled along with the precision when upgrading).
pub fn policy_context(n_max: usize, base: &NumericContext) -> Result<NumericContext> {
    let want = policy_precision(n_max);
    if base.precision_bits() >= want {
        Ok(base.clone())
    } else {
        NumericContext::new(want)?.with_fd_order(base.fd_order())
    }
}

/// Immutable table of orthogonal-polynomial data for one `(t, lambda)`.
///
/// Index ranges match the mathematical availability: `D_n` and `p(n)` for
/// `n` in `[0, N+1]`, `h_n`, `beta_n`, `r_n`, `R_n`, `H_n` for `n` in
/// `[0, N]` (an internal `beta_{N+1}` from the `(N+2)`-point factorization
/// feeds `R_N`).
#[derive(Debug, Clone)]
pub struct OrthoTable {
    params: WeightParams,
    n_max: usize,
    precision_bits: u32,
    /// `beta_0 .. beta_{N+1}`; `beta_0 = 0`.
    beta: Vec<Float>,
    /// `h_0 .. h_{N+1}`.
    h: Vec<Float>,
    /// `D_0 .. D_{N+1}`; `D_0 = 1`.
    d: Vec<Float>,
    /// `ln D_0 .. ln D_{N+1}`.
    log_d: Vec<Float>,
    /// `p(0) .. p(N+1)`; `p(0) = p(1) = 0`.
    p: Vec<Float>,
    /// `r_0 .. r_N`.
    r: Vec<Float>,
    /// `R_0 .. R_N`.
    cap_r: Vec<Float>,
    /// `H_0 .. H_N`; `H_0 = 0`.
    cap_h: Vec<Float>,
}

impl OrthoTable {
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn get<'a>(v: &'a [Float], n: usize) -> Result<&'a Float> {
        v.get(n).ok_or(Error::Index { index: n, len: v.len() })
    }

    /// Recurrence coefficient `beta_n`, `n` in `[0, N+1]`.
    pub fn beta(&self, n: usize) -> Result<&Float> {
        Self::get(&self.beta, n)
    }

    /// Squared norm `h_n`, `n` in `[0, N+1]`.
    pub fn h(&self, n: usize) -> Result<&Float> {
        Self::get(&self.h, n)
    }

    /// Hankel determinant `D_n`, `n` in `[0, N+1]`.
    pub fn d(&self, n: usize) -> Result<&Float> {
        Self::get(&self.d, n)
    }

    /// `ln D_n`, `n` in `[0, N+1]`.
    pub fn log_d(&self, n: usize) -> Result<&Float> {
        Self::get(&self.log_d, n)
    }

    /// Sub-leading coefficient `p(n)`, `n` in `[0, N+1]`.
    pub fn p(&self, n: usize) -> Result<&Float> {
        Self::get(&self.p, n)
    }

    /// Auxiliary `r_n = 2 beta_n - n`, `n` in `[0, N]`.
    pub fn r(&self, n: usize) -> Result<&Float> {
        Self::get(&self.r, n)
    }

    /// Auxiliary `R_n = t (2n + 1 + 2 lambda - 2 beta_n - 2 beta_{n+1})`,
    /// `n` in `[0, N]`.
    pub fn cap_r(&self, n: usize) -> Result<&Float> {
        Self::get(&self.cap_r, n)
    }

    /// `H_n = -sum_{j<n} R_j`, `n` in `[0, N]`.
    pub fn cap_h(&self, n: usize) -> Result<&Float> {
        Self::get(&self.cap_h, n)
    }

    /// Monic polynomial value with first and second derivatives,
    /// `(P_n(z), P_n'(z), P_n''(z))`, by the three-term recurrence and its
    /// derivatives.  Valid for `n` in `[0, N+1]`.
    pub fn eval_polynomial(&self, n: usize, z: &Float) -> Result<(Float, Float, Float)> {
        if n >= self.beta.len() {
            return Err(Error::Index {
                index: n,
                len: self.beta.len(),
            });
        }
        let prec = self.precision_bits;
        let mut pm1 = Float::with_val(prec, 0); // P_{-1}
        let mut p0 = Float::with_val(prec, 1); // P_0
        let mut dm1 = Float::with_val(prec, 0);
        let mut d0 = Float::with_val(prec, 0);
        let mut sm1 = Float::with_val(prec, 0);
        let mut s0 = Float::with_val(prec, 0);
        for k in 0..n {
            // P_{k+1} = z P_k - beta_k P_{k-1}, and the differentiated forms.
            let b = &self.beta[k];
            let mut p1 = Float::with_val(prec, z * &p0);
            p1 -= Float::with_val(prec, b * &pm1);
            let mut d1 = Float::with_val(prec, z * &d0);
            d1 += &p0;
            d1 -= Float::with_val(prec, b * &dm1);
            let mut s1 = Float::with_val(prec, z * &s0);
            s1 += Float::with_val(prec, 2 * &d0);
            s1 -= Float::with_val(prec, b * &sm1);
            pm1 = p0;
            p0 = p1;
            dm1 = d0;
            d0 = d1;
            sm1 = s0;
            s0 = s1;
        }
        Ok((p0, d0, s0))
    }
}

/// Cholesky factorization of a symmetric positive definite matrix given by
/// an entry generator; returns the lower-triangular factor.
pub(crate) fn cholesky<G>(size: usize, prec: u32, entry: G) -> Result<Vec<Vec<Float>>>
where
    G: Fn(usize, usize) -> Float,
{
    let mut l: Vec<Vec<Float>> = Vec::with_capacity(size);
    let mut tmp = Float::new(prec);
    for j in 0..size {
        let mut row = Vec::with_capacity(j + 1);
        for k in 0..=j {
            let mut s = Float::with_val(prec, entry(j, k));
            if k < j {
                for i in 0..k {
                    tmp.assign(&row[i] * &l[k][i]);
                    s -= &tmp;
                }
                s /= &l[k][k];
                row.push(s);
            } else {
                for item in row.iter() {
                    tmp.assign(item.square_ref());
                    s -= &tmp;
                }
                if s.cmp0() != Some(std::cmp::Ordering::Greater) {
                    return Err(Error::Positivity { order: j });
                }
                row.push(s.sqrt());
            }
        }
        l.push(row);
    }
    Ok(l)
}

/// Build the orthogonal-polynomial table of size `n_max` with the reference
/// (full Cholesky) route.
pub fn build_ortho_table(
    n_max: usize,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<OrthoTable> {
    build_ortho_table_with(BuildRoute::FullCholesky, n_max, params, ctx)
}

/// Build the table with an explicit factorization route.
pub fn build_ortho_table_with(
    route: BuildRoute,
    n_max: usize,
    params: &WeightParams,
    ctx: &NumericContext,
) -> Result<OrthoTable> {
    let prec = ctx.precision_bits();
    let m = n_max + 2; // factorization order
    let moments = moment_table(2 * m - 2, params, ctx)?;

    // h_0 .. h_{m-1} from the pivots.
    let h: Vec<Float> = match route {
        BuildRoute::FullCholesky => {
            let l = cholesky(m, prec, |j, k| {
                Float::with_val(prec, moments.mu(j + k).unwrap())
            })?;
            (0..m)
                .map(|i| Float::with_val(prec, l[i][i].square_ref()))
                .collect()
        }
        BuildRoute::EvenOddSplit => {
            // Even/odd permutation splits the checkerboard Hankel matrix in
            // two: E[i][j] = mu_{2i+2j} (even degrees), O[i][j] =
            // mu_{2i+2j+2} (odd degrees).  Pivots interleave back as
            // h_{2i} = E-pivot_i^2, h_{2i+1} = O-pivot_i^2.
            let ne = m - m / 2;
            let no = m / 2;
            let le = cholesky(ne, prec, |i, j| {
                Float::with_val(prec, moments.mu(2 * (i + j)).unwrap())
            })
            .map_err(|e| match e {
                Error::Positivity { order } => Error::Positivity { order: 2 * order },
                other => other,
            })?;
            let lo = cholesky(no, prec, |i, j| {
                Float::with_val(prec, moments.mu(2 * (i + j) + 2).unwrap())
            })
            .map_err(|e| match e {
                Error::Positivity { order } => Error::Positivity { order: 2 * order + 1 },
                other => other,
            })?;
            (0..m)
                .map(|n| {
                    let v = if n % 2 == 0 { &le[n / 2][n / 2] } else { &lo[n / 2][n / 2] };
                    Float::with_val(prec, v.square_ref())
                })
                .collect()
        }
    };

    let t = params.t();
    let lambda = params.lambda();

    // beta_0 = 0, beta_n = h_n / h_{n-1}.
    let mut beta = Vec::with_capacity(m);
    beta.push(Float::with_val(prec, 0));
    for n in 1..m {
        beta.push(Float::with_val(prec, &h[n] / &h[n - 1]));
    }

    // D_n and ln D_n, cumulative over h.
    let mut d = Vec::with_capacity(m + 1);
    let mut log_d = Vec::with_capacity(m + 1);
    d.push(Float::with_val(prec, 1));
    log_d.push(Float::with_val(prec, 0));
    for n in 1..=m - 1 {
        d.push(Float::with_val(prec, &d[n - 1] * &h[n - 1]));
        let lh = Float::with_val(prec, h[n - 1].ln_ref());
        log_d.push(Float::with_val(prec, &log_d[n - 1] + &lh));
    }

    // p(n) = -sum_{j<n} beta_j.
    let mut p = Vec::with_capacity(m);
    p.push(Float::with_val(prec, 0));
    for n in 1..m {
        let mut next = Float::with_val(prec, &p[n - 1]);
        next -= &beta[n - 1];
        p.push(next);
    }

    // r_n = 2 beta_n - n for n <= N.
    let mut r = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut v = Float::with_val(prec, 2 * &beta[n]);
        v -= Float::with_val(prec, n as u64);
        r.push(v);
    }

    // R_n = t (2n + 1 + 2 lambda - 2 beta_n - 2 beta_{n+1}) for n <= N.
    let mut cap_r = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut v = Float::with_val(prec, 2 * lambda);
        v += (2 * n + 1) as u64;
        v -= Float::with_val(prec, 2 * &beta[n]);
        v -= Float::with_val(prec, 2 * &beta[n + 1]);
        v *= t;
        cap_r.push(v);
    }

    // H_n = -sum_{j<n} R_j.
    let mut cap_h = Vec::with_capacity(n_max + 1);
    cap_h.push(Float::with_val(prec, 0));
    for n in 1..=n_max {
        let mut v = Float::with_val(prec, &cap_h[n - 1]);
        v -= &cap_r[n - 1];
        cap_h.push(v);
    }

    Ok(OrthoTable {
        params: params.clone(),
        n_max,
        precision_bits: prec,
        beta,
        h,
        d,
        log_d,
        p,
        r,
        cap_r,
        cap_h,
    })
}

/// Rebuild `table` at 128 more bits and return the maximum relative
/// discrepancy over all `beta_n`.  A healthy build keeps this below
/// `2^(64 - precision)`: the extra bits beyond the conditioning loss are
/// genuine.
pub fn certify_table(table: &OrthoTable, ctx: &NumericContext) -> Result<Float> {
    let hi_bits = table.precision_bits + 128;
    let hi_ctx = NumericContext::new(hi_bits)?.with_fd_order(ctx.fd_order())?;
    let hi = build_ortho_table(table.n_max, &table.params, &hi_ctx)?;
    let prec = table.precision_bits;
    let mut worst = Float::with_val(prec, 0);
    for n in 1..=table.n_max + 1 {
        let mut diff = Float::with_val(prec, &table.beta[n] - &hi.beta[n]);
        diff /= &hi.beta[n];
        diff.abs_mut();
        if diff > worst {
            worst = diff;
        }
    }
    Ok(worst)
}

/// Auxiliary quantity `R_n` from its defining integral
/// `(2 lambda t / h_n) int P_n(y)^2 w(y) / (1 + t y^2) dy`,
/// by quadrature -- an oracle independent of the recurrence identities.
pub fn aux_integral_upper(table: &OrthoTable, n: usize, ctx: &NumericContext) -> Result<Float> {
    let h_n = table.h(n)?.clone();
    let integral = weighted_pair_integral(table, n, n, ctx)?;
    let prec = ctx.precision_bits();
    let mut c = Float::with_val(prec, 2 * table.params.lambda());
    c *= table.params.t();
    c /= &h_n;
    Ok(c * integral)
}

/// Auxiliary quantity `r_n` from its defining integral
/// `(2 lambda t / h_{n-1}) int y P_n(y) P_{n-1}(y) w(y) / (1 + t y^2) dy`.
/// Requires `n >= 1`.
pub fn aux_integral_lower(table: &OrthoTable, n: usize, ctx: &NumericContext) -> Result<Float> {
    if n == 0 {
        return Err(Error::Domain("aux_integral_lower needs n >= 1".into()));
    }
    let h_nm1 = table.h(n - 1)?.clone();
    let integral = weighted_pair_integral(table, n, n - 1, ctx)?;
    let prec = ctx.precision_bits();
    let mut c = Float::with_val(prec, 2 * table.params.lambda());
    c *= table.params.t();
    c /= &h_nm1;
    Ok(c * integral)
}

/// `int x^(m+k odd?) P_m P_k w / (1 + t y^2)` helper:
/// for `m == k` the plain product, for `m == k + 1` one extra factor `y`
/// (both integrands are even, so the real-line integral is taken directly).
fn weighted_pair_integral(
    table: &OrthoTable,
    m: usize,
    k: usize,
    ctx: &NumericContext,
) -> Result<Float> {
    let params = table.params.clone();
    let with_y = m != k;
    integrate(
        |y: &Float| {
            let p = y.prec();
            let (pm, _, _) = table.eval_polynomial(m, y)?;
            let pk = if with_y {
                let (pk, _, _) = table.eval_polynomial(k, y)?;
                pk
            } else {
                pm.clone()
            };
            let w = params.weight(y, ctx);
            let mut q = Float::with_val(p, y.square_ref());
            q *= params.t();
            q += 1u32;
            let mut v = Float::with_val(p, &pm * &pk);
            v *= w;
            v /= q;
            if with_y {
                v *= y;
            }
            Ok(v)
        },
        &Domain::RealLine,
        ctx,
    )
}

/// Hankel determinant `D_n = det(mu_{j+k})_{j,k<n}` by cofactor expansion on
/// closed-form moments; exponential cost, restricted to `n <= 8`.  Test
/// oracle, deliberately independent of the Cholesky pipeline.
pub fn hankel_det_direct(n: usize, params: &WeightParams, ctx: &NumericContext) -> Result<Float> {
    if n > 8 {
        return Err(Error::Domain(format!(
            "cofactor-expansion determinant is restricted to n <= 8, got {n}"
        )));
    }
    if n == 0 {
        return Ok(ctx.float(1));
    }
    let prec = ctx.precision_bits();
    let mut mm = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            row.push(moment(j + k, params, ctx)?);
        }
        mm.push(row);
    }
    fn det(m: &[Vec<Float>], cols: &mut Vec<usize>, row: usize, prec: u32) -> Float {
        if cols.len() == 1 {
            return Float::with_val(prec, &m[row][cols[0]]);
        }
        let mut acc = Float::with_val(prec, 0);
        for i in 0..cols.len() {
            let c = cols.remove(i);
            let minor = det(m, cols, row + 1, prec);
            cols.insert(i, c);
            let term = Float::with_val(prec, &m[row][c] * &minor);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let mut cols: Vec<usize> = (0..n).collect();
    Ok(det(&mm, &mut cols, 0, prec))
}

/// Serialized form of [`OrthoTable`]: decimal strings at full precision,
/// suitable for exact round-tripping at the recorded precision.
#[derive(Debug, Serialize, Deserialize)]
pub struct OrthoTableRepr {
    pub t: String,
    pub lambda: String,
    pub n_max: usize,
    pub precision_bits: u32,
    /// `D_0 .. D_{N+1}`.
    pub d: Vec<String>,
    /// `h_0 .. h_{N+1}`.
    pub h: Vec<String>,
    /// `beta_0 .. beta_{N+1}` (one entry past `N`, feeding `R_N`).
    pub beta: Vec<String>,
    /// `p(0) .. p(N+1)`.
    pub p: Vec<String>,
    /// `r_0 .. r_N`.
    pub r: Vec<String>,
    /// `R_0 .. R_N`.
    pub cap_r: Vec<String>,
    /// `H_0 .. H_N`.
    pub cap_h: Vec<String>,
}

fn to_dec(v: &Float) -> String {
    v.to_string_radix(10, None)
}

fn from_dec(s: &str, prec: u32) -> Result<Float> {
    let parsed = Float::parse(s)
        .map_err(|e| Error::Config(format!("bad decimal literal {s:?}: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

impl OrthoTable {
    /// Serializable snapshot with decimal strings at full precision.
    pub fn to_repr(&self) -> OrthoTableRepr {
        OrthoTableRepr {
            t: to_dec(self.params.t()),
            lambda: to_dec(self.params.lambda()),
            n_max: self.n_max,
            precision_bits: self.precision_bits,
            d: self.d.iter().map(to_dec).collect(),
            h: self.h.iter().map(to_dec).collect(),
            beta: self.beta.iter().map(to_dec).collect(),
            p: self.p.iter().map(to_dec).collect(),
            r: self.r.iter().map(to_dec).collect(),
            cap_r: self.cap_r.iter().map(to_dec).collect(),
            cap_h: self.cap_h.iter().map(to_dec).collect(),
        }
    }

    /// JSON serialization of [`OrthoTable::to_repr`].
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("table serialization cannot fail")
    }

    /// Rebuild a table from its serialized snapshot.
    pub fn from_repr(repr: &OrthoTableRepr) -> Result<Self> {
        let prec = repr.precision_bits;
        let params = WeightParams::new(from_dec(&repr.t, prec)?, from_dec(&repr.lambda, prec)?)?;
        let n_max = repr.n_max;
        let expect = |name: &str, len: usize, want: usize| -> Result<()> {
            if len != want {
                return Err(Error::Config(format!(
                    "array {name} has length {len}, expected {want}"
                )));
            }
            Ok(())
        };
        expect("d", repr.d.len(), n_max + 2)?;
        expect("h", repr.h.len(), n_max + 2)?;
        expect("beta", repr.beta.len(), n_max + 2)?;
        expect("p", repr.p.len(), n_max + 2)?;
        expect("r", repr.r.len(), n_max + 1)?;
        expect("cap_r", repr.cap_r.len(), n_max + 1)?;
        expect("cap_h", repr.cap_h.len(), n_max + 1)?;
        let parse_vec = |v: &[String]| -> Result<Vec<Float>> {
            v.iter().map(|s| from_dec(s, prec)).collect()
        };
        let d = parse_vec(&repr.d)?;
        let h = parse_vec(&repr.h)?;
        let beta = parse_vec(&repr.beta)?;
        let p = parse_vec(&repr.p)?;
        let r = parse_vec(&repr.r)?;
        let cap_r = parse_vec(&repr.cap_r)?;
        let cap_h = parse_vec(&repr.cap_h)?;
        let log_d = d
            .iter()
            .map(|v| Float::with_val(prec, v.ln_ref()))
            .collect();
        Ok(OrthoTable {
            params,
            n_max,
            precision_bits: prec,
            beta,
            h,
            d,
            log_d,
            p,
            r,
            cap_r,
            cap_h,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: OrthoTableRepr = serde_json::from_str(s)
            .map_err(|e| Error::Config(format!("bad table JSON: {e}")))?;
        Self::from_repr(&repr)
    }
}
