//! The parabolic special case `p = 2, q = 1`: the pair (cosp, sinp) on the
//! parabola `cosp^2 + sinp = 1`.
//!
//! Setting C = cosp in the area relation and using S = 1 - C^2 collapses
//! the boundary integral to a polynomial, and the relation becomes a
//! depressed cubic in C:
//!
//! ```text
//!     C^3 + 3 C + 3 Phi - 4 = 0
//! ```
//!
//! whose single real root has the explicit radical form implemented by
//! [`cosp_closed`]. An equivalent hyperbolic rewrite ([`cosp_hyper`])
//! avoids the cancellation the radicals suffer far from the branch, and a
//! fifth-order Maclaurin pair ([`series`]) covers small arguments. All
//! three agree on the geometric window `[0, 8/3]` and continue smoothly
//! outside it; only the geometric area interpretation stops there.
//!
//! On top of the pair sit the modulus `ip = sqrt(cosp^2 + sinp^2)`, the
//! normalized coordinates (cp, sp) on the unit circle, and the
//! gudermannian-style angle [`gdp`] that maps the parabolic functions onto
//! genuine circular ones ([`reconstruct`]).

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, real_cbrt, Tolerances};

/// Quarter period Φ* of the parabolic pair: cosp crosses zero here.
pub const QUARTER_PERIOD: f64 = 4.0 / 3.0;

/// End of the geometric branch (twice the quarter period): cosp reaches -1.
pub const BRANCH_END: f64 = 8.0 / 3.0;

/// Beyond this size of `k = 4 - 3 Phi` the radical form loses digits to
/// cancellation, so the closed forms delegate to the hyperbolic rewrite.
const RADICAL_LIMIT: f64 = 8.0;

/// The radical pair (u, v) of the cubic's real root: `cosp = u - v` with
/// `u v = 1`.
fn closed_uv(phi: f64) -> (f64, f64) {
    let k = 4.0 - 3.0 * phi;
    let r = (1.0 + 0.25 * k * k).sqrt();
    (real_cbrt(0.5 * k + r), real_cbrt(r - 0.5 * k))
}

/// cosp via the radical form of the cubic's real root.
///
/// Total on the real line. For `|4 - 3 Phi| > 8` the evaluation is routed
/// through [`cosp_hyper`], which computes the same root without the
/// large-argument cancellation of the radicals.
pub fn cosp_closed(phi: f64) -> f64 {
    if (4.0 - 3.0 * phi).abs() > RADICAL_LIMIT {
        return cosp_hyper(phi).0;
    }
    let (u, v) = closed_uv(phi);
    u - v
}

/// sinp via the same radical pair: `sinp = 3 - u^2 - v^2`.
///
/// Because `u v = 1`, this equals `1 - cosp^2` identically; evaluating it
/// from u and v directly keeps the two functions on the same footing.
pub fn sinp_closed(phi: f64) -> f64 {
    if (4.0 - 3.0 * phi).abs() > RADICAL_LIMIT {
        return cosp_hyper(phi).1;
    }
    let (u, v) = closed_uv(phi);
    3.0 - u * u - v * v
}

/// (cosp, sinp) through the hyperbolic rewrite of the cubic root:
///
/// ```text
///     w = asinh(y / 2),  y = 3 Phi - 4
///     cosp = -2 sinh(w / 3)
///     sinp =  3 - 2 cosh(2 w / 3)
/// ```
///
/// Stable for arbitrarily large |Phi|; used directly as an independent
/// cross-check of the radical form and as its large-argument fallback.
pub fn cosp_hyper(phi: f64) -> (f64, f64) {
    let w = (0.5 * (3.0 * phi - 4.0)).asinh();
    let c = -2.0 * (w / 3.0).sinh();
    let s = 3.0 - 2.0 * (2.0 * w / 3.0).cosh();
    (c, s)
}

/// Residual of the defining cubic: `y^3 + 3 y + 3 Phi - 4`.
///
/// Zero (to rounding) exactly when `y = cosp(Phi)`; exposed so callers can
/// verify any claimed cosp value without re-deriving the cubic.
pub fn cubic_residual(phi: f64, y: f64) -> f64 {
    y * y * y + 3.0 * y + 3.0 * phi - 4.0
}

/// Fifth-order Maclaurin pair for (cosp, sinp):
///
/// ```text
///     cosp ~ 1 - Phi/2 - Phi^2/8 - Phi^3/24 - (5 Phi^4 + Phi^5)/384
///     sinp ~ Phi - Phi^3/24 - Phi^4/32 - 7 Phi^5/384
/// ```
///
/// The remainder is O(Phi^6), so the pair is a practical approximation
/// only on roughly `|Phi| <= 0.5`; the function itself evaluates anywhere.
pub fn series(phi: f64) -> (f64, f64) {
    let p2 = phi * phi;
    let p3 = p2 * phi;
    let p4 = p3 * phi;
    let p5 = p4 * phi;
    let c = 1.0 - 0.5 * phi - p2 / 8.0 - p3 / 24.0 - (5.0 * p4 + p5) / 384.0;
    let s = phi - p3 / 24.0 - p4 / 32.0 - 7.0 * p5 / 384.0;
    (c, s)
}

/// Modulus of the parabolic pair: `ip = sqrt(cosp^2 + sinp^2)`.
///
/// On the geometric window it stays within `[sqrt(3)/2, 1]`, equal to 1
/// exactly at Phi = 0, Phi* and the branch end.
pub fn ip(phi: f64) -> f64 {
    let c = cosp_closed(phi);
    let s = sinp_closed(phi);
    c.hypot(s)
}

/// The pair normalized onto the unit circle: `(cosp / ip, sinp / ip)`.
pub fn cp_sp(phi: f64) -> (f64, f64) {
    let c = cosp_closed(phi);
    let s = sinp_closed(phi);
    let m = c.hypot(s);
    (c / m, s / m)
}

/// Which determination of the parabolic gudermannian to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdMode {
    /// Principal value `atan(sinp / cosp)`: cheap, but jumps from +pi/2 to
    /// -pi/2 where cosp crosses zero at the quarter period.
    Raw,
    /// The continuous angle `integral from 0 to Phi of d(sigma) / ip^2`,
    /// which passes smoothly through the quarter period and reaches pi at
    /// the branch end.
    Continuous,
}

/// The parabolic gudermannian: the circular angle theta(Phi) through which
/// `(cosp, sinp) = ip (cos theta, sin theta)`.
///
/// The two modes agree on `[0, Phi*)` and differ by exactly pi on
/// `(Phi*, 8/3]`. `Raw` fails only if cosp is exactly zero in floating
/// point; `Continuous` needs a quadrature and can propagate its errors.
pub fn gdp(phi: f64, mode: GdMode, tol: &Tolerances) -> Result<f64> {
    match mode {
        GdMode::Raw => {
            let c = cosp_closed(phi);
            if c == 0.0 {
                return Err(Error::TangentPole { phi });
            }
            Ok((sinp_closed(phi) / c).atan())
        }
        GdMode::Continuous => {
            let (theta, _) = integrate_adaptive(
                |sigma| {
                    let m = ip(sigma);
                    1.0 / (m * m)
                },
                0.0,
                phi,
                tol,
            )?;
            Ok(theta)
        }
    }
}

/// The unit phase factor of the pair, as `(cos theta, sin theta)` with
/// theta the continuous parabolic gudermannian.
pub fn ep(phi: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    let theta = gdp(phi, GdMode::Continuous, tol)?;
    Ok((theta.cos(), theta.sin()))
}

/// Rebuild (cosp, sinp) from modulus and phase: `ip (cos theta, sin theta)`.
///
/// Agreement with the closed forms is the end-to-end check that modulus,
/// phase, and pair are mutually consistent.
pub fn reconstruct(phi: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    let theta = gdp(phi, GdMode::Continuous, tol)?;
    let m = ip(phi);
    Ok((m * theta.cos(), m * theta.sin()))
}

/// All closed-form quantities of the pair at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicValue {
    pub phi: f64,
    pub cosp: f64,
    pub sinp: f64,
    pub ip: f64,
}

impl ParabolicValue {
    /// Evaluate the pair and its modulus at `phi` via the closed forms.
    pub fn eval(phi: f64) -> Self {
        let cosp = cosp_closed(phi);
        let sinp = sinp_closed(phi);
        ParabolicValue {
            phi,
            cosp,
            sinp,
            ip: cosp.hypot(sinp),
        }
    }
}
