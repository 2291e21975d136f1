//! The generalized trigonometric pair (C, S) on the curve `C^p + S^q = 1`.
//!
//! The argument Φ is twice the area bounded by the C-axis, the radius
//! vector to the point (C, S), and the curve itself — the same
//! normalization that gives circular cosine and sine at `p = q = 2`.
//! Written out, the defining relation is
//!
//! ```text
//!     (1/2) C S + integral from C to 1 of (1 - xi^p)^(1/q) d(xi) = Phi / 2
//! ```
//!
//! together with `S = (1 - C^p)^(1/q) >= 0` (the upper branch). Two
//! independent evaluation routes are provided: inverting the area relation
//! with a bracketed root solve (`eval_area`, the reference route), and
//! integrating the coupled derivative system (`eval_ode`):
//!
//! ```text
//!     dC/dPhi = -q S^(q-1) / (q S^q + p C^p)
//!     dS/dPhi =  p C^(p-1) / (q S^q + p C^p)
//! ```
//!
//! For even `p` the branch runs from (1, 0) at Φ = 0 through (0, 1) at the
//! quarter period to (-1, 0) at twice the quarter period; for odd `p`, C
//! stays in [0, 1] and the branch ends at (0, 1).

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, ode_integrate, solve_bracketed, Tolerances};

/// Validated exponent pair of the defining curve `C^p + S^q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    p: u32,
    q: u32,
}

impl Params {
    /// Both exponents must be integers in `1..=16`.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if !(1..=16).contains(&p) || !(1..=16).contains(&q) {
            return Err(Error::BadParams { p, q });
        }
        Ok(Params { p, q })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Lower end of the C-range of the branch: -1 for even `p` (the curve
    /// is symmetric in C), 0 for odd `p` (S would leave the real branch).
    fn c_min(self) -> f64 {
        if self.p.is_multiple_of(2) {
            -1.0
        } else {
            0.0
        }
    }
}

/// One point of the pair: the argument and the curve coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigValue {
    pub phi: f64,
    pub c: f64,
    pub s: f64,
}

/// S as a function of C on the upper branch: `(1 - C^p)^(1/q)`.
fn surf(params: Params, c: f64) -> f64 {
    let t = (1.0 - c.powi(params.p as i32)).max(0.0);
    if params.q == 1 {
        t
    } else {
        t.powf(1.0 / params.q as f64)
    }
}

/// dS/dC on the upper branch. Unbounded at `C^p = 1` when `q > 1`; callers
/// treat non-finite values as "no usable derivative".
fn surf_deriv(params: Params, c: f64) -> f64 {
    let p = params.p as f64;
    let q = params.q as f64;
    let power = c.powi(params.p as i32 - 1);
    if params.q == 1 {
        -p * power
    } else {
        let t = (1.0 - c.powi(params.p as i32)).max(0.0);
        -(p / q) * power * t.powf(1.0 / q - 1.0)
    }
}

/// `integral from c to 1 of (1 - xi^p)^(1/q) d(xi)` for `c` in the C-range.
///
/// For `q > 1` the integrand has a branch point at `xi = 1`, so the
/// variable change `xi = 1 - t^q` is applied first; it maps the integral to
/// a smooth one and costs only a polynomial evaluation per point:
///
/// ```text
///     integral from 0 to (1-c)^(1/q) of q t^(q-1) (1 - (1 - t^q)^p)^(1/q) dt
/// ```
///
/// Negative `c` (even `p` only) is folded back with the symmetry of the
/// integrand: `I(c) = 2 I(0) - I(-c)`.
fn boundary_integral(params: Params, c: f64, tol: &Tolerances) -> Result<f64> {
    debug_assert!((params.c_min()..=1.0).contains(&c));
    if c < 0.0 {
        let i0 = boundary_integral_nonneg(params, 0.0, tol)?;
        let folded = boundary_integral_nonneg(params, -c, tol)?;
        return Ok(2.0 * i0 - folded);
    }
    boundary_integral_nonneg(params, c, tol)
}

fn boundary_integral_nonneg(params: Params, c: f64, tol: &Tolerances) -> Result<f64> {
    let p = params.p as i32;
    if params.q == 1 {
        let (value, _) = integrate_adaptive(|xi| 1.0 - xi.powi(p), c, 1.0, tol)?;
        return Ok(value);
    }
    let q = params.q as i32;
    let qf = params.q as f64;
    let upper = (1.0 - c).powf(1.0 / qf);
    let (value, _) = integrate_adaptive(
        |t| {
            let xi = 1.0 - t.powi(q);
            let inner = (1.0 - xi.powi(p)).max(0.0);
            qf * t.powi(q - 1) * inner.powf(1.0 / qf)
        },
        0.0,
        upper,
        tol,
    )?;
    Ok(value)
}

/// Φ as a function of C: `C S(C) + 2 I(C)` (twice the sector area).
fn area_phi(params: Params, c: f64, tol: &Tolerances) -> Result<f64> {
    Ok(c * surf(params, c) + 2.0 * boundary_integral(params, c, tol)?)
}

/// dΦ/dC = C S'(C) - S(C). Strictly negative on the open branch, which is
/// what makes the area relation invertible by a bracketed solve.
fn area_phi_deriv(params: Params, c: f64) -> f64 {
    c * surf_deriv(params, c) - surf(params, c)
}

/// Upper bound of the S-interval on which [`origin_phi`] is used.
const S_SWITCH: f64 = 0.5;

/// C as a function of S on the near-origin part of the branch.
fn origin_c(params: Params, s: f64) -> f64 {
    let t = (1.0 - s.powi(params.q as i32)).max(0.0);
    if params.p == 1 {
        t
    } else {
        t.powf(1.0 / params.p as f64)
    }
}

/// Φ as a function of S near the origin, obtained by running the boundary
/// integral of the area relation along the S axis instead of the C axis:
///
/// ```text
///     Φ(s) = c(s) s + (2 q / p) * integral from 0 to s of
///                                 eta^q (1 - eta^q)^(1/p - 1) d(eta),
///     c(s) = (1 - s^q)^(1/p).
/// ```
///
/// For `q >= 2` this form is what keeps small-Φ evaluation accurate: there
/// `S = (1 - C^p)^(1/q)` computed from a solved C loses precision without
/// bound as C -> 1 (even a perfectly rounded C carries half an ulp of
/// absolute error, which the q-th root amplifies by (p/q) (C/S)^(q-1)),
/// while solving Φ(s) = Φ for `s` delivers S to the solver's own accuracy.
/// Restricted to `s <= S_SWITCH` so the `(1 - eta^q)` factor stays away
/// from its branch point and the integrand stays smooth.
fn origin_phi(params: Params, s: f64, tol: &Tolerances) -> Result<f64> {
    let q = params.q as i32;
    let pf = params.p as f64;
    let qf = params.q as f64;
    let (integral, _) = integrate_adaptive(
        |eta| {
            let t = (1.0 - eta.powi(q)).max(0.0);
            eta.powi(q) * t.powf(1.0 / pf - 1.0)
        },
        0.0,
        s,
        tol,
    )?;
    Ok(origin_c(params, s) * s + (2.0 * qf / pf) * integral)
}

/// dΦ/dS = C + (q/p) S^q (1 - S^q)^(1/p - 1), the reciprocal of dS/dΦ.
fn origin_phi_deriv(params: Params, s: f64) -> f64 {
    let q = params.q as i32;
    let pf = params.p as f64;
    let qf = params.q as f64;
    let t = (1.0 - s.powi(q)).max(0.0);
    origin_c(params, s) + (qf / pf) * s.powi(q) * t.powf(1.0 / pf - 1.0)
}

/// Quarter period Φ* of the pair: the argument at which C first vanishes,
/// `2 * integral from 0 to 1 of (1 - xi^p)^(1/q) d(xi)`.
///
/// Evaluated by adaptive quadrature at default tolerances. The full branch
/// ends at Φ* for odd `p` and at 2 Φ* for even `p`.
pub fn quarter_period(params: Params) -> Result<f64> {
    Ok(2.0 * boundary_integral(params, 0.0, &Tolerances::default())?)
}

/// Domain check shared by the evaluation routes. Accepts a hair of slack
/// beyond each end so that arguments produced by accumulating grid steps
/// still evaluate, and returns the argument clamped back onto the branch.
fn clamp_to_branch(params: Params, phi: f64, phi_max: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::InvalidInput {
            reason: format!("phi must be finite, got {phi}"),
        });
    }
    let slack = 1e-9 * phi_max.max(1.0);
    if phi < -slack || phi > phi_max + slack {
        return Err(Error::PhiOutOfDomain {
            phi,
            phi_max,
            p: params.p,
            q: params.q,
        });
    }
    Ok(phi.clamp(0.0, phi_max))
}

/// Evaluate (C, S) at Φ by inverting the area relation with a safeguarded
/// Newton solve.
///
/// This is the reference route: it works for every supported exponent pair
/// and its accuracy is limited only by the quadrature and root tolerances.
///
/// For `q = 1` a single solve of `area_phi(C) = Φ` on `[c_min, 1]` covers
/// the branch: `S = 1 - C^p` is perfectly conditioned in C everywhere.
/// For `q >= 2` the solve variable follows the geometry instead, because
/// computing the small coordinate from the large one through the curve
/// equation throws away precision without bound near the branch ends:
///
/// - Φ in the near-origin region (S below [`S_SWITCH`]) solves the S-form
///   [`origin_phi`] for S directly and derives C from it;
/// - larger Φ solves the C-form [`area_phi`];
/// - for even `p` the half branch past the quarter period is folded back
///   with the exact reflection `C(Φ) = -C(Φ_max - Φ)`, `S(Φ) = S(Φ_max - Φ)`,
///   so the near-end region reuses the well-conditioned S-form as well.
pub fn eval_area(params: Params, phi: f64, tol: &Tolerances) -> Result<TrigValue> {
    tol.check()?;
    let c_min = params.c_min();
    let phi_max = area_phi(params, c_min, tol)?;
    let phi_c = clamp_to_branch(params, phi, phi_max)?;

    let solve_c_form = |lo: f64, target: f64, tol: &Tolerances| -> Result<f64> {
        solve_bracketed(
            |c| {
                let value = area_phi(params, c, tol)? - target;
                Ok((value, area_phi_deriv(params, c)))
            },
            lo,
            1.0,
            tol,
        )
    };

    if params.q == 1 {
        let c = solve_c_form(c_min, phi_c, tol)?;
        return Ok(TrigValue {
            phi,
            c,
            s: surf(params, c),
        });
    }

    let reflect = params.p.is_multiple_of(2) && phi_c > 0.5 * phi_max;
    let (phi_eff, c_sign) = if reflect {
        (phi_max - phi_c, -1.0)
    } else {
        (phi_c, 1.0)
    };

    let phi_switch = origin_phi(params, S_SWITCH, tol)?;
    if phi_eff <= phi_switch {
        let s = solve_bracketed(
            |s| {
                let value = origin_phi(params, s, tol)? - phi_eff;
                Ok((value, origin_phi_deriv(params, s)))
            },
            0.0,
            S_SWITCH,
            tol,
        )?;
        return Ok(TrigValue {
            phi,
            c: c_sign * origin_c(params, s),
            s,
        });
    }

    // The reflection has already folded even-p arguments onto [0, Φ_max/2],
    // where C is non-negative; odd p needs the full [c_min, 1] = [0, 1].
    let c = solve_c_form(0.0, phi_eff, tol)?;
    Ok(TrigValue {
        phi,
        c: c_sign * c,
        s: surf(params, c),
    })
}

/// Evaluate (C, S) at Φ by integrating the derivative system from the
/// known point (1, 0) at Φ = 0.
///
/// Fully independent of [`eval_area`] (no quadrature of the boundary
/// integrand, no root solve), which is exactly what makes it useful as a
/// cross-check. The denominator `q S^q + p C^p` equals `q + (p - q) C^p`
/// on the curve and stays within `[min(p, q), max(p, q)]`, so the field is
/// smooth along the whole branch.
pub fn eval_ode(params: Params, phi: f64, tol: &Tolerances) -> Result<TrigValue> {
    tol.check()?;
    let c_min = params.c_min();
    let phi_max = area_phi(params, c_min, tol)?;
    let phi_c = clamp_to_branch(params, phi, phi_max)?;
    let p = params.p as i32;
    let q = params.q as i32;
    let pf = params.p as f64;
    let qf = params.q as f64;
    let y = ode_integrate(
        |_, y: &[f64; 2]| {
            let denom = qf * y[1].powi(q) + pf * y[0].powi(p);
            [
                -qf * y[1].powi(q - 1) / denom,
                pf * y[0].powi(p - 1) / denom,
            ]
        },
        [1.0, 0.0],
        0.0,
        phi_c,
        tol,
    )?;
    Ok(TrigValue {
        phi,
        c: y[0],
        s: y[1],
    })
}

/// The coupled derivatives (dC/dΦ, dS/dΦ) at a point of the curve.
///
/// The shared denominator `q S^q + p C^p` must be strictly positive; on
/// the real branch it always is, so a non-positive value means the point
/// does not lie on the curve and is reported as a singularity.
pub fn derivatives(params: Params, at: &TrigValue) -> Result<(f64, f64)> {
    let p = params.p as i32;
    let q = params.q as i32;
    let pf = params.p as f64;
    let qf = params.q as f64;
    let denom = qf * at.s.powi(q) + pf * at.c.powi(p);
    if denom <= 0.0 || !denom.is_finite() {
        return Err(Error::DerivativeSingularity {
            denom,
            c: at.c,
            s: at.s,
        });
    }
    Ok((
        -qf * at.s.powi(q - 1) / denom,
        pf * at.c.powi(p - 1) / denom,
    ))
}

/// Tangent T(Φ) = S(Φ) / C(Φ), with a pole where C vanishes.
///
/// Satisfies `dT/dΦ = 1 / C^2` — the familiar `sec^2`-style rule — which
/// the tests verify by finite differences.
pub fn tangent(params: Params, phi: f64, tol: &Tolerances) -> Result<f64> {
    let tv = eval_area(params, phi, tol)?;
    let t = tv.s / tv.c;
    if tv.c == 0.0 || !t.is_finite() {
        return Err(Error::TangentPole { phi });
    }
    Ok(t)
}

/// The classical gudermannian `gd(Φ) = atan(sinh Φ)`, the angle whose
/// tangent equals sinh Φ; equivalently the integral of sech from 0 to Φ.
///
/// Total on the real line, odd, with horizontal asymptotes at ±π/2. Kept
/// here as the reference model for the parabolic-family analogue.
pub fn gd_classical(phi: f64) -> f64 {
    phi.sinh().atan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fd_derivative;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn params(p: u32, q: u32) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn exponents_outside_the_supported_range_are_rejected() {
        assert!(Params::new(0, 1).is_err());
        assert!(Params::new(1, 0).is_err());
        assert!(Params::new(17, 2).is_err());
        assert!(Params::new(2, 17).is_err());
        assert!(Params::new(1, 1).is_ok());
        assert!(Params::new(16, 16).is_ok());
    }

    #[test]
    fn quarter_periods_match_independent_values() {
        // (2, 2) is the circle, quarter period pi/2; (2, 1) and (4, 1)
        // reduce to polynomial integrals with rational values; (3, 3) and
        // (5, 5) were cross-computed from the Beta-function form
        // (2/p) B(1/p, 1 + 1/p) of the boundary integral.
        assert!((quarter_period(params(2, 2)).unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert!((quarter_period(params(2, 1)).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!((quarter_period(params(4, 1)).unwrap() - 8.0 / 5.0).abs() < 1e-12);
        assert!((quarter_period(params(1, 1)).unwrap() - 1.0).abs() < 1e-12);
        assert!(
            (quarter_period(params(3, 3)).unwrap() - 1.766_638_750_285_45).abs() < 1e-12
        );
        assert!(
            (quarter_period(params(5, 5)).unwrap() - 1.900_300_277_976_873_5).abs() < 1e-12
        );
    }

    #[test]
    fn circle_case_reproduces_cosine_and_sine() {
        let pr = params(2, 2);
        for i in 0..=20 {
            let phi = PI * i as f64 / 20.0;
            let tv = eval_area(pr, phi, &tol()).unwrap();
            assert!((tv.c - phi.cos()).abs() < 1e-10, "phi = {phi}, c = {}", tv.c);
            assert!((tv.s - phi.sin()).abs() < 1e-10, "phi = {phi}, s = {}", tv.s);
        }
    }

    #[test]
    fn area_route_hits_the_branch_endpoints_exactly() {
        let pr = params(2, 1);
        let at_zero = eval_area(pr, 0.0, &tol()).unwrap();
        assert_eq!(at_zero.c, 1.0);
        assert_eq!(at_zero.s, 0.0);

        let phi_max = 2.0 * quarter_period(pr).unwrap();
        let at_end = eval_area(pr, phi_max, &tol()).unwrap();
        assert_eq!(at_end.c, -1.0);
        assert_eq!(at_end.s, 0.0);

        // Odd p: the branch ends at (0, 1) after one quarter period.
        let pr = params(3, 2);
        let end = quarter_period(pr).unwrap();
        let at_end = eval_area(pr, end, &tol()).unwrap();
        assert_eq!(at_end.c, 0.0);
        assert_eq!(at_end.s, 1.0);
    }

    #[test]
    fn c_vanishes_at_the_quarter_period() {
        for (p, q) in [(2, 1), (2, 2), (4, 1), (3, 3), (16, 5)] {
            let pr = params(p, q);
            let phi_star = quarter_period(pr).unwrap();
            let tv = eval_area(pr, phi_star, &tol()).unwrap();
            assert!(tv.c.abs() < 1e-10, "(p, q) = ({p}, {q}), c = {}", tv.c);
            assert!((tv.s - 1.0).abs() < 1e-10, "(p, q) = ({p}, {q}), s = {}", tv.s);
        }
    }

    #[test]
    fn small_phi_stays_accurate_for_higher_q() {
        // Near the origin S is tiny while C is near 1; recovering S from a
        // solved C through the curve equation would amplify C's rounding by
        // (C/S)^(q-1), so these checks would fail by orders of magnitude if
        // the evaluation did not switch to the S-form of the area relation.
        for (p, q) in [(5, 5), (3, 7), (16, 16)] {
            let pr = params(p, q);
            let end = if p.is_multiple_of(2) { 2.0 } else { 1.0 } * quarter_period(pr).unwrap();
            for frac in [1e-4, 1e-3, 1e-2, 0.05] {
                let phi = end * frac;
                let area = eval_area(pr, phi, &tol()).unwrap();
                let ode = eval_ode(pr, phi, &tol()).unwrap();
                assert!(
                    (area.c - ode.c).abs() < 1e-11 && (area.s - ode.s).abs() < 1e-11,
                    "(p, q) = ({p}, {q}), phi = {phi}: area = ({}, {}), ode = ({}, {})",
                    area.c,
                    area.s,
                    ode.c,
                    ode.s
                );
            }
            // dS/dPhi = 1 at the origin for every pair, so S tracks phi
            // itself until the higher-order terms bite.
            let phi = end * 1e-4;
            let area = eval_area(pr, phi, &tol()).unwrap();
            assert!(
                (area.s - phi).abs() < 1e-12,
                "(p, q) = ({p}, {q}): s = {}, phi = {phi}",
                area.s
            );
        }
    }

    #[test]
    fn reflection_keeps_the_far_half_branch_accurate_for_even_p() {
        // Mirror image of the small-phi problem: for even p the branch end
        // has S -> 0 again, handled by reflecting onto the first half.
        let pr = params(2, 2);
        for delta in [1e-3, 1e-2, 0.1] {
            let phi = PI - delta;
            let tv = eval_area(pr, phi, &tol()).unwrap();
            assert!(
                (tv.c - phi.cos()).abs() < 1e-12 && (tv.s - phi.sin()).abs() < 1e-12,
                "phi = {phi}: ({}, {})",
                tv.c,
                tv.s
            );
        }

        let pr = params(4, 4);
        let end = 2.0 * quarter_period(pr).unwrap();
        for frac in [0.95, 0.999, 0.9999] {
            let phi = end * frac;
            let area = eval_area(pr, phi, &tol()).unwrap();
            let ode = eval_ode(pr, phi, &tol()).unwrap();
            assert!(
                (area.c - ode.c).abs() < 1e-10 && (area.s - ode.s).abs() < 1e-10,
                "phi = {phi}: area = ({}, {}), ode = ({}, {})",
                area.c,
                area.s,
                ode.c,
                ode.s
            );
        }
    }

    #[test]
    fn curve_identity_holds_along_the_branch() {
        for (p, q) in [(2, 1), (3, 2), (4, 3), (5, 5), (16, 16)] {
            let pr = params(p, q);
            let end = if p.is_multiple_of(2) { 2.0 } else { 1.0 } * quarter_period(pr).unwrap();
            for i in 0..=25 {
                let phi = end * i as f64 / 25.0;
                let tv = eval_area(pr, phi, &tol()).unwrap();
                let residual = tv.c.powi(p as i32) + tv.s.powi(q as i32) - 1.0;
                assert!(
                    residual.abs() < 1e-10,
                    "(p, q) = ({p}, {q}), phi = {phi}, residual = {residual}"
                );
            }
        }
    }

    #[test]
    fn ode_route_agrees_with_area_route() {
        for (p, q) in [(2, 1), (2, 2), (4, 1), (3, 3)] {
            let pr = params(p, q);
            let end = if p.is_multiple_of(2) { 2.0 } else { 1.0 } * quarter_period(pr).unwrap();
            for i in 1..8 {
                let phi = end * i as f64 / 8.0;
                let a = eval_area(pr, phi, &tol()).unwrap();
                let o = eval_ode(pr, phi, &tol()).unwrap();
                assert!(
                    (a.c - o.c).abs() < 1e-8 && (a.s - o.s).abs() < 1e-8,
                    "(p, q) = ({p}, {q}), phi = {phi}: area ({}, {}) vs ode ({}, {})",
                    a.c,
                    a.s,
                    o.c,
                    o.s
                );
            }
        }
    }

    #[test]
    fn evaluation_outside_the_branch_is_a_domain_error() {
        let pr = params(2, 1);
        match eval_area(pr, -0.25, &tol()) {
            Err(Error::PhiOutOfDomain { phi_max, .. }) => {
                assert!((phi_max - 8.0 / 3.0).abs() < 1e-12)
            }
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(eval_area(pr, 2.7, &tol()).is_err());
        assert!(eval_ode(pr, 1e3, &tol()).is_err());
        assert!(eval_area(pr, f64::NAN, &tol()).is_err());

        // Odd p: the branch is only one quarter period long.
        let pr = params(3, 2);
        let end = quarter_period(pr).unwrap();
        assert!(eval_area(pr, end * 1.5, &tol()).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences_of_the_area_route() {
        for (p, q) in [(2, 1), (2, 2), (4, 3)] {
            let pr = params(p, q);
            let phi = 0.7;
            let tv = eval_area(pr, phi, &tol()).unwrap();
            let (dc, ds) = derivatives(pr, &tv).unwrap();
            let h = tol().fd_step;
            let dc_fd = fd_derivative(|x| eval_area(pr, x, &tol()).unwrap().c, phi, h);
            let ds_fd = fd_derivative(|x| eval_area(pr, x, &tol()).unwrap().s, phi, h);
            assert!((dc - dc_fd).abs() < 1e-6, "(p, q) = ({p}, {q}): {dc} vs {dc_fd}");
            assert!((ds - ds_fd).abs() < 1e-6, "(p, q) = ({p}, {q}): {ds} vs {ds_fd}");
        }
    }

    #[test]
    fn derivative_at_the_start_of_the_branch() {
        // At (1, 0): dC/dPhi = -q * 0^(q-1) / p, dS/dPhi = p / p = 1.
        let tv = TrigValue { phi: 0.0, c: 1.0, s: 0.0 };
        let (dc, ds) = derivatives(params(2, 1), &tv).unwrap();
        assert_eq!(ds, 1.0);
        assert_eq!(dc, -0.5); // q = 1: S^0 = 1 even at S = 0

        let (dc, ds) = derivatives(params(2, 2), &tv).unwrap();
        assert_eq!(ds, 1.0);
        assert_eq!(dc, 0.0); // q = 2: the factor S kills the C-derivative
    }

    #[test]
    fn off_curve_points_with_nonpositive_denominator_are_singular() {
        let bad = TrigValue { phi: 0.0, c: -1.0, s: 0.0 };
        // p odd: p * C^p = -3 < 0 while S = 0.
        match derivatives(params(3, 1), &bad) {
            Err(Error::DerivativeSingularity { denom, .. }) => assert!(denom <= 0.0),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn tangent_matches_an_independently_computed_value() {
        // S / C at (2, 1), phi = 1, computed from the closed-form branch
        // values at 28 significant digits.
        let t = tangent(params(2, 1), 1.0, &tol()).unwrap();
        assert!((t - 2.781_618_048_109_451).abs() < 1e-9, "t = {t}");
    }

    #[test]
    fn tangent_derivative_follows_the_inverse_square_rule() {
        let pr = params(2, 1);
        let phi = 0.9;
        let h = 1e-6;
        let dt_fd = fd_derivative(|x| tangent(pr, x, &tol()).unwrap(), phi, h);
        let c = eval_area(pr, phi, &tol()).unwrap().c;
        let expected = 1.0 / (c * c);
        assert!(
            ((dt_fd - expected) / expected).abs() < 1e-5,
            "fd = {dt_fd}, expected = {expected}"
        );
    }

    #[test]
    fn circle_tangent_is_the_ordinary_tangent() {
        let t = tangent(params(2, 2), 0.6, &tol()).unwrap();
        assert!((t - 0.6f64.tan()).abs() < 1e-10, "t = {t}");
    }

    #[test]
    fn classical_gudermannian_reference_points() {
        assert_eq!(gd_classical(0.0), 0.0);
        // Value at 10 computed at extended precision; it approaches pi/2
        // from below but is still visibly short of it.
        assert!((gd_classical(10.0) - 1.570_705_526_935_434).abs() < 1e-12);
        assert!(gd_classical(10.0) < FRAC_PI_2);
        assert!((gd_classical(10.0) - FRAC_PI_2).abs() < 1e-4);
        // Odd symmetry.
        for phi in [0.3, 1.7, 42.0] {
            assert_eq!(gd_classical(-phi), -gd_classical(phi));
        }
    }

    #[test]
    fn classical_gudermannian_derivative_is_sech() {
        for phi in [-2.0, -0.5, 0.0, 0.8, 3.0] {
            let d = fd_derivative(gd_classical, phi, tol().fd_step);
            let sech = 1.0 / phi.cosh();
            assert!((d - sech).abs() < 1e-6, "phi = {phi}: {d} vs {sech}");
        }
    }
}
