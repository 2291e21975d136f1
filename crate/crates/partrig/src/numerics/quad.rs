//! Adaptive quadrature on a 7/15 Gauss-Kronrod pair.
//!
//! Each panel is evaluated once with the 15-point Kronrod rule; the embedded
//! 7-point Gauss value provides the error estimate. The driver repeatedly
//! splits the panel with the largest estimated error until the summed
//! estimate drops below `max(abs_tol, rel_tol * |value|)` or the refinement
//! budget is exhausted.

use crate::error::{Error, Result};
use crate::numerics::Tolerances;

/// Kronrod abscissae for the interval [-1, 1] (positive half; the last entry
/// is the midpoint). Odd indices are the embedded Gauss abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Weights of the embedded 7-point Gauss rule (for `XGK[1]`, `XGK[3]`,
/// `XGK[5]` and the midpoint).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One panel: Kronrod value and |Kronrod - Gauss| error estimate.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, &xj) in XGK.iter().enumerate().take(7) {
        let dx = half * xj;
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }

    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    Ok((value, err))
}

/// Adaptive integral of `f` over `[a, b]` with a global error target of
/// `max(abs_tol, rel_tol * |value|)`.
///
/// Returns `(value, err_est)` where `err_est` is the summed panel estimate
/// actually achieved. `a > b` is handled by orientation (the result is
/// negated); `a == b` returns `(0, 0)` without evaluating `f`. Non-finite
/// integrand values and an exhausted refinement budget are reported as
/// errors rather than folded into the result.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    tol.check()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput {
            reason: format!("integration limits must be finite, got [{a}, {b}]"),
        });
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }

    let (value, err) = gk15(&mut f, lo, hi)?;
    let mut panels = vec![Panel { a: lo, b: hi, value, err }];
    let budget = tol.max_iter.saturating_mul(4);

    for _ in 0..budget {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= tol.threshold(total) {
            return Ok((sign * total, total_err));
        }

        // Split the panel with the worst error estimate.
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a: pa, b: pb, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // The panel is no longer resolvable in floating point.
            break;
        }
        let (v1, e1) = gk15(&mut f, pa, mid)?;
        let (v2, e2) = gk15(&mut f, mid, pb)?;
        panels.push(Panel { a: pa, b: mid, value: v1, err: e1 });
        panels.push(Panel { a: mid, b: pb, value: v2, err: e2 });
    }

    let total: f64 = panels.iter().map(|p| p.value).sum();
    let total_err: f64 = panels.iter().map(|p| p.err).sum();
    if total_err <= tol.threshold(total) {
        return Ok((sign * total, total_err));
    }
    Err(Error::QuadratureNoConvergence {
        a,
        b,
        value: sign * total,
        err_est: total_err,
    })
}

/// Cumulative integral of `f` along a strictly increasing grid.
///
/// Returns `out` with `out[0] = 0` and `out[i] = integral of f from grid[0]
/// to grid[i]`. Segment integrals are accumulated with compensated
/// summation so the cumulative values stay accurate to a few ulps of the
/// running total even over thousands of segments.
pub fn cumulative_integral<F: FnMut(f64) -> f64>(
    mut f: F,
    grid: &[f64],
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    tol.check()?;
    if grid.is_empty() {
        return Err(Error::InvalidGrid {
            reason: "grid is empty".to_string(),
        });
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid {
            reason: "grid contains a non-finite point".to_string(),
        });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid {
            reason: "grid must be strictly increasing".to_string(),
        });
    }

    let mut out = Vec::with_capacity(grid.len());
    out.push(0.0);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for w in grid.windows(2) {
        let (seg, _) = integrate_adaptive(&mut f, w[0], w[1], tol)?;
        // Kahan update: feed the segment through the compensation term.
        let y = seg - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        out.push(sum);
    }
    Ok(out)
}
