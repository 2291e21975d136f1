//! A variable-coefficient oscillator solved exactly through a phase
//! integral.
//!
//! The equation is
//!
//! ```text
//!     A(Phi) y'' + (A'(Phi) / 2) y' + y = 0,     A > 0
//! ```
//!
//! and substituting `theta(Phi) = integral from 0 to Phi of d(sigma) /
//! sqrt(A)` turns it into the plain harmonic equation in theta, so every
//! solution is
//!
//! ```text
//!     y = alpha cos(theta) + beta sin(theta)
//! ```
//!
//! exactly. [`solve`] evaluates that formula on a sample grid (the phase
//! comes from compensated cumulative quadrature, so thousands of grid
//! points do not erode it), and [`residual`] measures how well any claimed
//! sample vector satisfies the equation, using only finite differences —
//! no knowledge of the phase trick — which makes it an independent check.
//!
//! With `A = ip^4` of the parabolic pair, `theta` is the parabolic
//! gudermannian and the normalized parabolic functions (cp, sp) are
//! exactly the two basic solutions; that is the bridge between this module
//! and the function families.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{cumulative_integral, Tolerances};
use crate::parabolic;

/// Natural cubic spline through strictly increasing knots.
///
/// Used to turn tabulated coefficient samples into a smooth `A(Phi)`.
/// Evaluation outside the knot range continues the end polynomial (the
/// natural boundary makes that nearly linear), so stray endpoint queries
/// stay finite and smooth.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivative at each knot (zero at both ends: natural spline).
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidInput {
                reason: format!("knot count mismatch: {} x-values, {} y-values", x.len(), y.len()),
            });
        }
        if x.len() < 2 {
            return Err(Error::GridTooCoarse { points: x.len(), min: 2 });
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput {
                reason: "spline knots must be finite".to_string(),
            });
        }
        if x.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid {
                reason: "spline knots must be strictly increasing".to_string(),
            });
        }

        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas solve of the tridiagonal system for the interior
            // second derivatives; the natural ends stay zero.
            let mut diag = vec![0.0; n - 2];
            let mut upper = vec![0.0; n - 2];
            let mut rhs = vec![0.0; n - 2];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                diag[i - 1] = 2.0 * (h0 + h1);
                upper[i - 1] = h1;
                rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for i in 1..n - 2 {
                let lower = x[i + 1] - x[i]; // h_i couples row i to row i-1
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (0..n - 2).rev() {
                let above = if i + 1 < n - 2 { upper[i] * m[i + 2] } else { 0.0 };
                m[i + 1] = (rhs[i] - above) / diag[i];
            }
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        // Index of the segment [x[i], x[i+1]] containing t, clamped so
        // out-of-range arguments ride the end segments.
        let i = match self.x.partition_point(|&k| k <= t) {
            0 => 0,
            j => (j - 1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

/// The coefficient A(Phi) of the oscillator.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    /// A = 1: the plain harmonic oscillator.
    Constant,
    /// A = 1 + Phi^2, whose phase integral is asinh(Phi).
    OnePlusPhiSquared,
    /// A = ip^4 of the parabolic pair, whose phase integral is the
    /// continuous parabolic gudermannian.
    Ip4Parabolic,
    /// A interpolated from tabulated samples by a natural cubic spline.
    Tabulated(CubicSpline),
}

impl Coefficient {
    pub fn eval(&self, phi: f64) -> f64 {
        match self {
            Coefficient::Constant => 1.0,
            Coefficient::OnePlusPhiSquared => 1.0 + phi * phi,
            Coefficient::Ip4Parabolic => {
                let m = parabolic::ip(phi);
                (m * m) * (m * m)
            }
            Coefficient::Tabulated(spline) => spline.eval(phi),
        }
    }

    /// Build a tabulated coefficient from samples `(x[i], a[i])`.
    pub fn tabulated(x: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        Ok(Coefficient::Tabulated(CubicSpline::new(x, a)?))
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Coefficient::Constant),
            "one_plus_phi_squared" => Ok(Coefficient::OnePlusPhiSquared),
            "ip4_parabolic" => Ok(Coefficient::Ip4Parabolic),
            other => Err(Error::InvalidInput {
                reason: format!(
                    "unknown coefficient '{other}' (expected constant, \
                     one_plus_phi_squared, or ip4_parabolic)"
                ),
            }),
        }
    }
}

/// An oscillator instance: coefficient, initial amplitudes, and the sample
/// grid on which the solution is wanted.
///
/// The grid must be strictly increasing, start at 0 (where `y = alpha` and
/// the theta-derivative picks out beta), and contain at least three points
/// so that the residual stencil has an interior.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorProblem {
    pub coefficient: Coefficient,
    pub alpha: f64,
    pub beta: f64,
    pub grid: Vec<f64>,
}

impl OscillatorProblem {
    /// Check grid shape, amplitude finiteness, and positivity of A at the
    /// grid points and segment midpoints.
    pub fn validate(&self) -> Result<()> {
        if self.grid.len() < 3 {
            return Err(Error::GridTooCoarse {
                points: self.grid.len(),
                min: 3,
            });
        }
        if self.grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid {
                reason: "grid contains a non-finite point".to_string(),
            });
        }
        if self.grid[0] != 0.0 {
            return Err(Error::InvalidGrid {
                reason: format!("grid must start at 0, got {}", self.grid[0]),
            });
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid {
                reason: "grid must be strictly increasing".to_string(),
            });
        }
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::InvalidInput {
                reason: format!(
                    "amplitudes must be finite, got alpha = {}, beta = {}",
                    self.alpha, self.beta
                ),
            });
        }
        let probe = |phi: f64| -> Result<()> {
            let a = self.coefficient.eval(phi);
            if a <= 0.0 || !a.is_finite() {
                return Err(Error::NonPositiveCoefficient { phi, value: a });
            }
            Ok(())
        };
        for w in self.grid.windows(2) {
            probe(w[0])?;
            probe(0.5 * (w[0] + w[1]))?;
        }
        probe(*self.grid.last().expect("grid checked non-empty"))?;
        Ok(())
    }
}

/// Uniform grid of `steps` segments from 0 to `to` (inclusive).
pub fn uniform_grid(to: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| to * i as f64 / steps as f64).collect()
}

/// Solution samples `y = alpha cos(theta) + beta sin(theta)` on the grid.
///
/// The phase theta is accumulated segment by segment with compensated
/// summation, so its values stay accurate to a few ulps across the whole
/// grid — which matters because the residual check differentiates them
/// twice.
pub fn solve(problem: &OscillatorProblem, tol: &Tolerances) -> Result<Vec<f64>> {
    tol.check()?;
    problem.validate()?;
    let theta = cumulative_integral(
        |phi| 1.0 / problem.coefficient.eval(phi).sqrt(),
        &problem.grid,
        tol,
    )?;
    Ok(theta
        .iter()
        .map(|&t| problem.alpha * t.cos() + problem.beta * t.sin())
        .collect())
}

/// Worst-point residual `max |A y'' + (A'/2) y' + y|` over the interior of
/// the grid, with all derivatives (including A') taken by central finite
/// differences of the samples.
///
/// Deliberately ignorant of how `y` was produced: it differentiates the
/// numbers it is given. For samples from [`solve`] on a uniform grid of
/// spacing h the result is O(h^2) — the stencil's truncation error, not
/// the solution's.
pub fn residual(problem: &OscillatorProblem, y: &[f64]) -> Result<f64> {
    problem.validate()?;
    let grid = &problem.grid;
    if y.len() != grid.len() {
        return Err(Error::InvalidInput {
            reason: format!(
                "sample count mismatch: {} grid points, {} samples",
                grid.len(),
                y.len()
            ),
        });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput {
            reason: "samples must be finite".to_string(),
        });
    }

    let a: Vec<f64> = grid.iter().map(|&phi| problem.coefficient.eval(phi)).collect();

    // Three-point stencils on a possibly non-uniform grid; both reduce to
    // the familiar central differences when the spacing is constant.
    let first = |v: &[f64], i: usize| -> f64 {
        let hm = grid[i] - grid[i - 1];
        let hp = grid[i + 1] - grid[i];
        (v[i + 1] * hm * hm - v[i - 1] * hp * hp + v[i] * (hp * hp - hm * hm))
            / (hm * hp * (hm + hp))
    };
    let second = |v: &[f64], i: usize| -> f64 {
        let hm = grid[i] - grid[i - 1];
        let hp = grid[i + 1] - grid[i];
        2.0 * (v[i - 1] * hp - v[i] * (hp + hm) + v[i + 1] * hm) / (hm * hp * (hm + hp))
    };

    let mut worst: f64 = 0.0;
    for i in 1..grid.len() - 1 {
        let r = a[i] * second(y, i) + 0.5 * first(&a, i) * first(y, i) + y[i];
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::{cp_sp, BRANCH_END};
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn spline_interpolates_knots_exactly_and_midpoints_closely() {
        let x: Vec<f64> = (0..=200).map(|i| 3.0 * i as f64 / 200.0).collect();
        let y: Vec<f64> = x.iter().map(|&t| t.cos()).collect();
        let sp = CubicSpline::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((sp.eval(*xi) - yi).abs() < 1e-13);
        }
        for i in 0..200 {
            let t = (x[i] + x[i + 1]) / 2.0;
            // Natural ends cost a boundary layer; interior is far better.
            assert!((sp.eval(t) - t.cos()).abs() < 1e-3, "t = {t}");
        }
        let mid = 1.50734;
        assert!((sp.eval(mid) - mid.cos()).abs() < 1e-8);
    }

    #[test]
    fn spline_rejects_malformed_knots() {
        assert!(CubicSpline::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(CubicSpline::new(vec![0.0], vec![1.0]).is_err());
        assert!(CubicSpline::new(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 3.0]).is_err());
        assert!(CubicSpline::new(vec![0.0, f64::NAN], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn coefficient_names_round_trip_through_from_str() {
        assert_eq!("constant".parse::<Coefficient>().unwrap(), Coefficient::Constant);
        assert_eq!(
            "one_plus_phi_squared".parse::<Coefficient>().unwrap(),
            Coefficient::OnePlusPhiSquared
        );
        assert_eq!(
            "ip4_parabolic".parse::<Coefficient>().unwrap(),
            Coefficient::Ip4Parabolic
        );
        assert!("harmonic".parse::<Coefficient>().is_err());
    }

    #[test]
    fn constant_coefficient_reproduces_cosine() {
        let problem = OscillatorProblem {
            coefficient: Coefficient::Constant,
            alpha: 1.0,
            beta: 0.0,
            grid: uniform_grid(PI, 200),
        };
        let y = solve(&problem, &tol()).unwrap();
        for (i, &phi) in problem.grid.iter().enumerate() {
            assert!((y[i] - phi.cos()).abs() < 1e-12, "phi = {phi}: y = {}", y[i]);
        }
    }

    #[test]
    fn quadratic_coefficient_has_an_asinh_phase() {
        // For A = 1 + Phi^2 the phase integral is asinh, giving a closed
        // form to compare against.
        let problem = OscillatorProblem {
            coefficient: Coefficient::OnePlusPhiSquared,
            alpha: 0.25,
            beta: -1.5,
            grid: uniform_grid(3.0, 150),
        };
        let y = solve(&problem, &tol()).unwrap();
        for (i, &phi) in problem.grid.iter().enumerate() {
            let th = phi.asinh();
            let exact = 0.25 * th.cos() - 1.5 * th.sin();
            assert!((y[i] - exact).abs() < 1e-10, "phi = {phi}");
        }
    }

    #[test]
    fn quartic_modulus_coefficient_recovers_the_normalized_pair() {
        let problem = OscillatorProblem {
            coefficient: Coefficient::Ip4Parabolic,
            alpha: 1.0,
            beta: 0.0,
            grid: uniform_grid(BRANCH_END, 120),
        };
        let y = solve(&problem, &tol()).unwrap();
        for (i, &phi) in problem.grid.iter().enumerate() {
            let (cp, _) = cp_sp(phi);
            assert!((y[i] - cp).abs() < 1e-9, "phi = {phi}: {} vs {cp}", y[i]);
        }
        let problem = OscillatorProblem { beta: 1.0, alpha: 0.0, ..problem };
        let y = solve(&problem, &tol()).unwrap();
        for (i, &phi) in problem.grid.iter().enumerate() {
            let (_, sp) = cp_sp(phi);
            assert!((y[i] - sp).abs() < 1e-9, "phi = {phi}: {} vs {sp}", y[i]);
        }
    }

    #[test]
    fn tabulated_coefficient_tracks_its_analytic_original() {
        let knots: Vec<f64> = (0..=120).map(|i| 3.0 * i as f64 / 120.0 - 0.01).collect();
        let samples: Vec<f64> = knots.iter().map(|&t| 1.0 + t * t).collect();
        let tabulated = Coefficient::tabulated(knots, samples).unwrap();
        let grid = uniform_grid(2.9, 80);
        let exact = solve(
            &OscillatorProblem {
                coefficient: Coefficient::OnePlusPhiSquared,
                alpha: 1.0,
                beta: 0.5,
                grid: grid.clone(),
            },
            &tol(),
        )
        .unwrap();
        let approx = solve(
            &OscillatorProblem {
                coefficient: tabulated,
                alpha: 1.0,
                beta: 0.5,
                grid,
            },
            &tol(),
        )
        .unwrap();
        for (a, b) in exact.iter().zip(&approx) {
            assert!((a - b).abs() < 1e-3, "{a} vs {b}");
        }
    }

    #[test]
    fn solutions_are_linear_in_the_amplitudes() {
        let grid = uniform_grid(3.0, 64);
        let run = |alpha: f64, beta: f64| {
            solve(
                &OscillatorProblem {
                    coefficient: Coefficient::OnePlusPhiSquared,
                    alpha,
                    beta,
                    grid: grid.clone(),
                },
                &tol(),
            )
            .unwrap()
        };
        let y10 = run(1.0, 0.0);
        let y01 = run(0.0, 1.0);
        let y = run(2.0, -3.0);
        for i in 0..grid.len() {
            let combined = 2.0 * y10[i] - 3.0 * y01[i];
            assert!((y[i] - combined).abs() < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn residual_of_a_solved_problem_shrinks_with_the_stencil() {
        let problem = |steps: usize| OscillatorProblem {
            coefficient: Coefficient::OnePlusPhiSquared,
            alpha: 1.0,
            beta: 1.0,
            grid: uniform_grid(3.0, steps),
        };
        let coarse = problem(300);
        let r_coarse = residual(&coarse, &solve(&coarse, &tol()).unwrap()).unwrap();
        let fine = problem(600);
        let r_fine = residual(&fine, &solve(&fine, &tol()).unwrap()).unwrap();
        assert!(r_coarse < 1e-4, "coarse residual {r_coarse}");
        let ratio = r_coarse / r_fine;
        assert!((3.5..=4.5).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn residual_flags_a_wrong_solution() {
        let problem = OscillatorProblem {
            coefficient: Coefficient::Constant,
            alpha: 1.0,
            beta: 0.0,
            grid: uniform_grid(PI, 100),
        };
        // cos(2 phi) oscillates twice as fast and fails the equation by
        // roughly 3 y.
        let wrong: Vec<f64> = problem.grid.iter().map(|&p| (2.0 * p).cos()).collect();
        let r = residual(&problem, &wrong).unwrap();
        assert!(r > 1.0, "residual = {r}");
    }

    #[test]
    fn non_uniform_grids_are_supported() {
        // Geometric spacing: smooth growth, so the one-sided weights of the
        // stencils matter.
        let mut grid = vec![0.0];
        let mut step = 0.005;
        while *grid.last().unwrap() < 2.0 {
            let next = grid.last().unwrap() + step;
            grid.push(next);
            step *= 1.005;
        }
        let problem = OscillatorProblem {
            coefficient: Coefficient::OnePlusPhiSquared,
            alpha: 1.0,
            beta: -0.5,
            grid,
        };
        let y = solve(&problem, &tol()).unwrap();
        let r = residual(&problem, &y).unwrap();
        assert!(r < 1e-3, "residual = {r}");
    }

    #[test]
    fn malformed_problems_are_rejected() {
        let ok = OscillatorProblem {
            coefficient: Coefficient::Constant,
            alpha: 1.0,
            beta: 0.0,
            grid: uniform_grid(1.0, 10),
        };
        assert!(ok.validate().is_ok());

        let two_points = OscillatorProblem { grid: vec![0.0, 1.0], ..ok.clone() };
        assert!(matches!(
            two_points.validate(),
            Err(Error::GridTooCoarse { points: 2, min: 3 })
        ));

        let shifted = OscillatorProblem { grid: vec![0.5, 1.0, 1.5], ..ok.clone() };
        assert!(shifted.validate().is_err());

        let unsorted = OscillatorProblem { grid: vec![0.0, 0.9, 0.4], ..ok.clone() };
        assert!(unsorted.validate().is_err());

        let bad_alpha = OscillatorProblem { alpha: f64::NAN, ..ok.clone() };
        assert!(bad_alpha.validate().is_err());

        // A tabulated coefficient that dips below zero inside the grid.
        let dipping = Coefficient::tabulated(
            vec![0.0, 0.5, 1.0],
            vec![1.0, -0.25, 1.0],
        )
        .unwrap();
        let negative = OscillatorProblem { coefficient: dipping, ..ok.clone() };
        assert!(matches!(
            negative.validate(),
            Err(Error::NonPositiveCoefficient { .. })
        ));

        let y_short = vec![0.0; 5];
        assert!(residual(&ok, &y_short).is_err());
    }
}
