//! Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//!
//! The fifth-order solution is advanced (local extrapolation); the embedded
//! fourth-order solution only feeds the error estimate. Step control uses
//! the standard mixed absolute/relative error norm with the classical
//! `0.9 * err^(-1/5)` factor, clamped so a single step never grows or
//! shrinks too violently.

use crate::error::{Error, Result};
use crate::numerics::Tolerances;

// Butcher tableau of the Dormand-Prince 5(4) pair.
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 0.2;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// Fifth-order weights.
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the fifth- and fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrate `y' = field(phi, y)` from `from` to `to` and return the final
/// state.
///
/// `from == to` returns `y0` unchanged without evaluating the field.
/// Integration in either direction is supported. The step budget is
/// `500 * max_iter` accepted-or-rejected attempts; exceeding it, or the
/// step size underflowing (which happens when the field is effectively
/// non-smooth at the working tolerance), is reported as an error.
pub fn ode_integrate<const N: usize, F>(
    mut field: F,
    y0: [f64; N],
    from: f64,
    to: f64,
    tol: &Tolerances,
) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    tol.check()?;
    if !(from.is_finite() && to.is_finite()) {
        return Err(Error::InvalidInput {
            reason: format!("integration limits must be finite, got [{from}, {to}]"),
        });
    }
    if from == to {
        return Ok(y0);
    }

    let span = to - from;
    let dir = span.signum();
    let mut phi = from;
    let mut y = y0;
    let mut h = span / 100.0;
    let max_steps = tol.max_iter.saturating_mul(500);
    let mut rejected_last = false;

    let combine = |y: &[f64; N], h: f64, ks: &[([f64; N], f64)]| -> [f64; N] {
        let mut out = *y;
        for (k, w) in ks {
            for i in 0..N {
                out[i] += h * w * k[i];
            }
        }
        out
    };

    for _ in 0..max_steps {
        // Land exactly on the endpoint; never step past it.
        if (phi + h - to) * dir > 0.0 {
            h = to - phi;
        }
        if (phi + h) == phi {
            // The step no longer moves the independent variable.
            return Err(Error::StepSizeUnderflow { phi });
        }

        let k1 = field(phi, &y);
        let y2 = combine(&y, h, &[(k1, A21)]);
        let k2 = field(phi + C[0] * h, &y2);
        let y3 = combine(&y, h, &[(k1, A31), (k2, A32)]);
        let k3 = field(phi + C[1] * h, &y3);
        let y4 = combine(&y, h, &[(k1, A41), (k2, A42), (k3, A43)]);
        let k4 = field(phi + C[2] * h, &y4);
        let y5 = combine(&y, h, &[(k1, A51), (k2, A52), (k3, A53), (k4, A54)]);
        let k5 = field(phi + C[3] * h, &y5);
        let y6 = combine(&y, h, &[(k1, A61), (k2, A62), (k3, A63), (k4, A64), (k5, A65)]);
        let k6 = field(phi + C[4] * h, &y6);
        let y_new = combine(&y, h, &[(k1, B1), (k3, B3), (k4, B4), (k5, B5), (k6, B6)]);
        let k7 = field(phi + h, &y_new);

        // Scaled RMS error of the embedded pair.
        let mut err_sq = 0.0;
        for i in 0..N {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = tol.abs_tol + tol.rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale) * (e / scale);
        }
        let err = (err_sq / N as f64).sqrt();

        if err.is_finite() && err <= 1.0 {
            phi += h;
            y = y_new;
            if phi == to || (to - phi) * dir <= 0.0 {
                return Ok(y);
            }
            let raw = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
            let factor = raw.clamp(0.2, if rejected_last { 1.0 } else { 5.0 });
            rejected_last = false;
            h *= factor;
        } else {
            rejected_last = true;
            let factor = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 0.5)
            } else {
                0.1
            };
            h *= factor;
        }
    }

    Err(Error::OdeStepBudget {
        max_steps,
        phi,
    })
}
