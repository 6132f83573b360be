//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`].  Variants are
//! grouped by failure mode rather than by module, since the same conditions
//! (bad parameter domains, non-convergence, loss of positivity) recur across
//! the moment, orthogonalization and asymptotic layers.

use std::fmt;

/// Errors produced by the numeric and structural layers of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the mathematical domain of the operation
    /// (e.g. `t <= 0` in the weight, `a <= 0` in the Kummer integral,
    /// an evaluation point outside the support of a density).
    Domain(String),
    /// The gamma function was requested at a pole (nonpositive integer).
    Pole(String),
    /// An iterative procedure (quadrature level refinement, Newton solve)
    /// failed to reach its tolerance.
    Convergence(String),
    /// A Hankel/moment matrix lost positive definiteness during Cholesky
    /// factorization; `order` is the first failing pivot index.
    Positivity { order: usize },
    /// An index into a precomputed table was out of range.
    Index { index: usize, len: usize },
    /// The one-cut condition `lambda * t <= 1` required by the equilibrium
    /// measure was violated.
    OneCut(String),
    /// A transformation needed by a verification is singular at the given
    /// data (e.g. the Painleve V variable `W = R/(R-2)` with `R` near 0
    /// or 2, which happens identically at `lambda = 0`).
    Degenerate(String),
    /// Invalid configuration of a context or run (bad precision/tolerance
    /// combinations, malformed grids, unparsable numbers).
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Pole(msg) => write!(f, "pole: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            Error::Positivity { order } => {
                write!(f, "moment matrix is not positive definite at order {order}")
            }
            Error::Index { index, len } => {
                write!(f, "index {index} out of range for table of length {len}")
            }
            Error::OneCut(msg) => write!(f, "one-cut condition violated: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate transformation: {msg}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
