//! The quintic special case `p = 4, q = 1`: the pair (cosm, sinm) on the
//! quartic curve `cosm^4 + sinm = 1`.
//!
//! Eliminating S from the area relation leaves a quintic in C,
//!
//! ```text
//!     3 C^5 + 5 C - 8 + 5 Phi = 0
//! ```
//!
//! which (unlike the parabolic cubic) has no radical solution, so cosm is
//! produced by a safeguarded Newton solve. The polynomial is strictly
//! increasing in C, so the root is unique for every real Phi and the
//! bracket `|C| <= max(1, |8 - 5 Phi| / 5)` always contains it: at the
//! bound, `|3 C^5 + 5 C| >= 5 |C| >= |8 - 5 Phi|`.
//!
//! The quarter period is exactly 8/5, and the branch ends at 16/5 with
//! cosm = -1. As with the parabolic pair, the defining polynomial is
//! perfectly meaningful for any real Phi, so evaluation continues past the
//! geometric window.

use crate::error::{Error, Result};
use crate::numerics::{solve_bracketed_from, Tolerances};

/// Quarter period of the quintic pair: cosm crosses zero here.
pub const QUARTER_PERIOD: f64 = 8.0 / 5.0;

/// End of the geometric branch: cosm reaches -1.
pub const BRANCH_END: f64 = 16.0 / 5.0;

/// cosm via a Newton solve of the defining quintic, started from the
/// small-argument approximation `1 - Phi/2`.
pub fn cosm(phi: f64, tol: &Tolerances) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::InvalidInput {
            reason: format!("phi must be finite, got {phi}"),
        });
    }
    let rhs = 8.0 - 5.0 * phi;
    let bound = (rhs.abs() / 5.0).max(1.0);
    let guess = 1.0 - 0.5 * phi;
    solve_bracketed_from(
        |c| {
            let c4 = c * c * c * c;
            Ok((3.0 * c4 * c + 5.0 * c - rhs, 15.0 * c4 + 5.0))
        },
        -bound,
        bound,
        guess,
        tol,
    )
}

/// sinm from the curve: `1 - cosm^4`.
pub fn sinm(phi: f64, tol: &Tolerances) -> Result<f64> {
    let c = cosm(phi, tol)?;
    Ok(1.0 - c * c * c * c)
}

/// Residual of the defining quintic: `3 y^5 + 5 y - 8 + 5 Phi`.
///
/// Zero (to rounding) exactly when `y = cosm(Phi)`.
pub fn quintic_residual(phi: f64, y: f64) -> f64 {
    3.0 * y.powi(5) + 5.0 * y - 8.0 + 5.0 * phi
}

/// The quintic pair at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticValue {
    pub phi: f64,
    pub cosm: f64,
    pub sinm: f64,
}

impl QuinticValue {
    pub fn eval(phi: f64, tol: &Tolerances) -> Result<Self> {
        let c = cosm(phi, tol)?;
        Ok(QuinticValue {
            phi,
            cosm: c,
            sinm: 1.0 - c * c * c * c,
        })
    }
}
