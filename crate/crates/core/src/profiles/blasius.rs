//! Blasius boundary layer `2f''' + f f'' = 0`, `f(0) = f'(0) = 0`,
//! `f'(∞) = 1`, solved by shooting on `s = f''(0)`.

use serde::Serialize;

use super::ProfileSample;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlasiusOptions {
    /// End of the integration window; `f'(x_max) = 1` is imposed there.
    pub x_max: f64,
    /// Required `|f'(x_max) - 1|`.
    pub tol_far: f64,
    /// Bracket width at which the root search stops.
    pub tol_root: f64,
    /// Nominal RK4 step; rounded down so that it divides `x_max`.
    pub step: f64,
    pub bracket: (f64, f64),
    pub max_iterations: usize,
}

impl Default for BlasiusOptions {
    fn default() -> Self {
        Self {
            x_max: 20.0,
            tol_far: 1e-10,
            tol_root: 1e-12,
            step: 1e-3,
            bracket: (0.1, 1.0),
            max_iterations: 200,
        }
    }
}

/// Converged shooting solution sampled on the uniform RK4 grid.
#[derive(Debug, Clone, Serialize)]
pub struct BlasiusSolution {
    /// `f''(0)`.
    pub shoot_parameter: f64,
    pub step: f64,
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub d2f: Vec<f64>,
    /// Reconstructed from the ODE: `f''' = -f f'' / 2`.
    pub d3f: Vec<f64>,
    /// Order of the dense output between grid points (one RK4 sub-step).
    pub interpolation_order: u32,
    /// `|f'(x_max) - 1|`.
    pub far_field_error: f64,
    /// Root-finder iterations used.
    pub iterations: usize,
}

type State = [f64; 3];

#[inline]
fn rhs(y: &State) -> State {
    [y[1], y[2], -0.5 * y[0] * y[2]]
}

#[inline]
fn rk4_step(y: &State, h: f64) -> State {
    let k1 = rhs(y);
    let y2 = [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1], y[2] + 0.5 * h * k1[2]];
    let k2 = rhs(&y2);
    let y3 = [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1], y[2] + 0.5 * h * k2[2]];
    let k3 = rhs(&y3);
    let y4 = [y[0] + h * k3[0], y[1] + h * k3[1], y[2] + h * k3[2]];
    let k4 = rhs(&y4);
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn grid_step(opts: &BlasiusOptions) -> (usize, f64) {
    let n = (opts.x_max / opts.step).ceil().max(1.0) as usize;
    (n, opts.x_max / n as f64)
}

/// Integrates from 0 to `x_max` with `f''(0) = s`, returning `f'(x_max) - 1`.
fn shoot(s: f64, n: usize, h: f64) -> Result<f64> {
    let mut y = [0.0, 0.0, s];
    for k in 0..n {
        y = rk4_step(&y, h);
        if !y.iter().all(|v| v.is_finite() && v.abs() < 1e100) {
            return Err(Error::BlowUp { x: (k + 1) as f64 * h });
        }
    }
    Ok(y[1] - 1.0)
}

/// Shooting with the default step and bracket.
pub fn solve_blasius(x_max: f64, tol_far: f64, tol_root: f64) -> Result<BlasiusSolution> {
    solve_blasius_with(&BlasiusOptions { x_max, tol_far, tol_root, ..Default::default() })
}

pub fn solve_blasius_with(opts: &BlasiusOptions) -> Result<BlasiusSolution> {
    if !(opts.x_max >= 10.0) {
        return Err(Error::InvalidArgument(format!("x_max must be >= 10, got {}", opts.x_max)));
    }
    if !(opts.tol_far > 0.0 && opts.tol_root > 0.0 && opts.step > 0.0) {
        return Err(Error::InvalidArgument("tolerances and step must be positive".into()));
    }
    let (n, h) = grid_step(opts);

    let (mut lo, mut hi) = opts.bracket;
    let mut f_lo = shoot(lo, n, h)?;
    let mut f_hi = shoot(hi, n, h)?;
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }

    // Illinois regula falsi; bisection whenever the secant point stalls.
    let mut side = 0i8;
    let mut best = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    let mut iterations = 0;
    while (hi - lo).abs() > opts.tol_root && best.1 != 0.0 {
        if iterations == opts.max_iterations {
            return Err(Error::NoConvergence { what: "Blasius shooting", iterations });
        }
        iterations += 1;
        let mut s = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let width = hi - lo;
        if !(s > lo + 1e-3 * width && s < hi - 1e-3 * width) {
            s = 0.5 * (lo + hi);
        }
        let fs = shoot(s, n, h)?;
        if fs.abs() < best.1.abs() {
            best = (s, fs);
        }
        if fs.signum() == f_lo.signum() {
            lo = s;
            f_lo = fs;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = s;
            f_hi = fs;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }

    let (s, residual) = best;
    if residual.abs() > opts.tol_far {
        return Err(Error::NoConvergence { what: "Blasius far-field condition", iterations });
    }
    Ok(BlasiusSolution::integrate(s, n, h, iterations))
}

impl BlasiusSolution {
    fn integrate(s: f64, n: usize, h: f64, iterations: usize) -> Self {
        let mut x = Vec::with_capacity(n + 1);
        let mut f = Vec::with_capacity(n + 1);
        let mut df = Vec::with_capacity(n + 1);
        let mut d2f = Vec::with_capacity(n + 1);
        let mut y = [0.0, 0.0, s];
        for k in 0..=n {
            if k > 0 {
                y = rk4_step(&y, h);
            }
            x.push(k as f64 * h);
            f.push(y[0]);
            df.push(y[1]);
            d2f.push(y[2]);
        }
        let d3f = f.iter().zip(&d2f).map(|(f, f2)| -0.5 * f * f2).collect();
        let far_field_error = (df[n] - 1.0).abs();
        Self {
            shoot_parameter: s,
            step: h,
            x,
            f,
            df,
            d2f,
            d3f,
            interpolation_order: 4,
            far_field_error,
            iterations,
        }
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().expect("solution grid is never empty")
    }

    /// `max_k |2 f'''_k + f_k f''_k|`.
    pub fn ode_residual_max(&self) -> f64 {
        self.f
            .iter()
            .zip(&self.d2f)
            .zip(&self.d3f)
            .map(|((f, f2), f3)| (2.0 * f3 + f * f2).abs())
            .fold(0.0, f64::max)
    }

    /// `(f, f', f'')` at any `x` in `[0, x_max]` via one RK4 sub-step from
    /// the grid node to the left.
    pub fn state_at(&self, x: f64) -> [f64; 3] {
        let last = self.x.len() - 1;
        let k = ((x / self.step).floor() as usize).min(last);
        let y = [self.f[k], self.df[k], self.d2f[k]];
        let dx = x - self.x[k];
        if dx == 0.0 {
            y
        } else {
            rk4_step(&y, dx)
        }
    }

    /// Profile value `(V, V', V'') = (f', f'', f''')`; `(1, 0, 0)` beyond `x_max`.
    pub fn eval(&self, x: f64) -> ProfileSample {
        if x > self.x_max() {
            return ProfileSample::new(1.0, 0.0, 0.0);
        }
        let [f, f1, f2] = self.state_at(x);
        // `+ 0.0` turns the -0 at the wall into 0
        ProfileSample::new(f1, f2, -0.5 * f * f2 + 0.0)
    }

    /// Residual function `s ↦ f'(x_max; s) - 1` on this solution's grid.
    pub fn far_field_residual(&self, s: f64) -> Result<f64> {
        shoot(s, self.x.len() - 1, self.step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values_are_imposed() {
        let sol = solve_blasius(20.0, 1e-10, 1e-12).unwrap();
        assert_eq!(sol.f[0], 0.0);
        assert_eq!(sol.df[0], 0.0);
        assert!((sol.df.last().unwrap() - 1.0).abs() <= 1e-10);
        assert!((sol.shoot_parameter - 0.332057).abs() < 1e-6);
        assert!(sol.ode_residual_max() <= 1e-8);
    }

    #[test]
    fn grid_values_are_monotone_with_expected_signs() {
        let sol = solve_blasius(20.0, 1e-10, 1e-12).unwrap();
        for k in 1..sol.x.len() {
            assert!(sol.d2f[k] > 0.0, "f'' must stay positive at x = {}", sol.x[k]);
            assert!(sol.d3f[k] <= 0.0);
        }
    }

    #[test]
    fn dense_output_hits_nodes_exactly() {
        let sol = solve_blasius(20.0, 1e-10, 1e-12).unwrap();
        let k = 1234;
        let s = sol.eval(sol.x[k]);
        assert_eq!(s.v, sol.df[k]);
        assert_eq!(s.dv, sol.d2f[k]);
        assert_eq!(sol.eval(25.0), ProfileSample::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn shooting_residual_is_increasing_over_bracket() {
        let sol = solve_blasius(20.0, 1e-10, 1e-12).unwrap();
        let samples: Vec<f64> =
            (0..=18).map(|k| sol.far_field_residual(0.1 + 0.05 * k as f64).unwrap()).collect();
        assert!(samples[0] < 0.0 && *samples.last().unwrap() > 0.0);
        assert!(samples.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(solve_blasius(5.0, 1e-10, 1e-12), Err(Error::InvalidArgument(_))));
        let opts = BlasiusOptions { bracket: (0.5, 1.0), ..Default::default() };
        assert!(matches!(solve_blasius_with(&opts), Err(Error::NoBracket { .. })));
        let opts = BlasiusOptions { max_iterations: 2, ..Default::default() };
        assert!(matches!(solve_blasius_with(&opts), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn blow_up_is_reported() {
        // f'' grows without bound when started far outside the physical range.
        let opts = BlasiusOptions { bracket: (-60.0, 1.0), ..Default::default() };
        assert!(matches!(solve_blasius_with(&opts), Err(Error::BlowUp { .. }) | Err(Error::NoBracket { .. })));
    }
}
