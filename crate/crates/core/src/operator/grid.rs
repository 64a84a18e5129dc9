//! Chebyshev–Gauss–Lobatto grids on the half-line and their quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How the half-line is realized on the collocation grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// `[0, X_max]` with clamped conditions at both ends.
    TruncatedChebyshev,
    /// `x = L (1 - t) / (1 + t)`; the last node sits at `x = ∞`.
    AlgebraicMap,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truncated" | "truncated-chebyshev" => Ok(Scheme::TruncatedChebyshev),
            "algebraic" | "algebraic-map" => Ok(Scheme::AlgebraicMap),
            other => Err(Error::InvalidArgument(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Fewest nodes that leave interior rows after four boundary rows.
pub const MIN_NODES: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub scheme: Scheme,
    /// `X_max` (truncation) or `L` (algebraic map).
    pub map_param: f64,
    /// Increasing nodes, `x_0 = 0`.
    pub nodes: Vec<f64>,
    /// Clenshaw–Curtis weights transformed by the map Jacobian.
    pub weights: Vec<f64>,
    /// Reference coordinates `t_j = cos(jπ/(N-1))` in `[-1, 1]`.
    pub reference: Vec<f64>,
    /// `dt/dx` at each node.
    pub dt_dx: Vec<f64>,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `X_max` for the truncated scheme, `∞` otherwise.
    pub fn x_max(&self) -> f64 {
        match self.scheme {
            Scheme::TruncatedChebyshev => self.map_param,
            Scheme::AlgebraicMap => f64::INFINITY,
        }
    }

    /// `∑ w_k f(x_k)`; nodes with zero weight are skipped so `f(∞)` is never
    /// consulted.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w != 0.0)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Chebyshev–Gauss–Lobatto points `cos(jπ/n)`, `j = 0..=n`, in the
/// symmetric `sin` form.
pub(crate) fn cgl_points(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..=n).map(|j| (PI * (nf - 2.0 * j as f64) / (2.0 * nf)).sin()).collect()
}

/// Clenshaw–Curtis weights on `[-1, 1]` for `n + 1` points.
pub(crate) fn clenshaw_curtis(n: usize) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    let nf = n as f64;
    if n == 0 {
        w[0] = 2.0;
        return w;
    }
    let theta = |k: usize| PI * k as f64 / nf;
    let mut v = vec![1.0; n.saturating_sub(1)];
    if n % 2 == 0 {
        w[0] = 1.0 / (nf * nf - 1.0);
        w[n] = w[0];
        for k in 1..n / 2 {
            let kf = k as f64;
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * kf * theta(i + 1)).cos() / (4.0 * kf * kf - 1.0);
            }
        }
        for (i, vi) in v.iter_mut().enumerate() {
            *vi -= (nf * theta(i + 1)).cos() / (nf * nf - 1.0);
        }
    } else {
        w[0] = 1.0 / (nf * nf);
        w[n] = w[0];
        for k in 1..=(n - 1) / 2 {
            let kf = k as f64;
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * kf * theta(i + 1)).cos() / (4.0 * kf * kf - 1.0);
            }
        }
    }
    for (i, vi) in v.iter().enumerate() {
        w[i + 1] = 2.0 * vi / nf;
    }
    w
}

pub fn build_grid(scheme: Scheme, n_nodes: usize, map_param: f64) -> Result<Grid> {
    if n_nodes < MIN_NODES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_NODES} nodes, got {n_nodes}")));
    }
    if !(map_param > 0.0 && map_param.is_finite()) {
        return Err(Error::InvalidArgument(format!("map parameter must be positive, got {map_param}")));
    }
    let n = n_nodes - 1;
    let t = cgl_points(n);
    let cc = clenshaw_curtis(n);
    let (nodes, weights, dt_dx) = match scheme {
        Scheme::TruncatedChebyshev => {
            let half = 0.5 * map_param;
            let mut nodes: Vec<f64> = t.iter().map(|&tj| half * (1.0 - tj)).collect();
            nodes[0] = 0.0;
            nodes[n] = map_param;
            let weights = cc.iter().map(|w| w * half).collect();
            (nodes, weights, vec![-1.0 / half; n + 1])
        }
        Scheme::AlgebraicMap => {
            let l = map_param;
            let mut nodes: Vec<f64> = t.iter().map(|&tj| l * (1.0 - tj) / (1.0 + tj)).collect();
            nodes[0] = 0.0;
            nodes[n] = f64::INFINITY;
            let mut weights: Vec<f64> =
                t.iter().zip(&cc).map(|(&tj, w)| w * 2.0 * l / ((1.0 + tj) * (1.0 + tj))).collect();
            weights[n] = 0.0;
            let dt_dx = t.iter().map(|&tj| -(1.0 + tj) * (1.0 + tj) / (2.0 * l)).collect();
            (nodes, weights, dt_dx)
        }
    };
    Ok(Grid { scheme, map_param, nodes, weights, reference: t, dt_dx })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_endpoints_and_weights() {
        let g = build_grid(Scheme::TruncatedChebyshev, 64, 100.0).unwrap();
        assert_eq!(g.nodes[0], 0.0);
        assert_eq!(g.nodes[63], 100.0);
        assert!(g.nodes.windows(2).all(|w| w[1] > w[0]));
        assert!(g.weights.iter().all(|&w| w > 0.0));
        let total: f64 = g.weights.iter().sum();
        assert!((total - 100.0).abs() < 1e-10);
    }

    #[test]
    fn weights_integrate_decaying_functions() {
        // ∫₀^100 x e^{-x} dx = 1 - 101 e^{-100}
        let g = build_grid(Scheme::TruncatedChebyshev, 64, 100.0).unwrap();
        let exact = 1.0 - 101.0 * (-100.0f64).exp();
        assert!((g.integrate(|x| x * (-x).exp()) - exact).abs() < 1e-8);
        let g = build_grid(Scheme::TruncatedChebyshev, 128, 100.0).unwrap();
        assert!((g.integrate(|x| (-2.0 * x).exp()) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn algebraic_map_median_and_quadrature() {
        let g = build_grid(Scheme::AlgebraicMap, 64, 10.0).unwrap();
        assert_eq!(g.nodes[0], 0.0);
        assert!(g.nodes[63].is_infinite());
        let median = 0.5 * (g.nodes[31] + g.nodes[32]);
        assert!((median - 10.0).abs() < 0.1, "median {median}");
        // geometric mean of the two middle nodes is exactly L
        assert!(((g.nodes[31] * g.nodes[32]).sqrt() - 10.0).abs() < 1e-10);
        let g = build_grid(Scheme::AlgebraicMap, 128, 2.0).unwrap();
        assert!((g.integrate(|x| (-x).exp()) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(build_grid(Scheme::TruncatedChebyshev, 4, 100.0).is_err());
        assert!(build_grid(Scheme::TruncatedChebyshev, 32, 0.0).is_err());
        assert!("nonsense".parse::<Scheme>().is_err());
        assert_eq!("algebraic".parse::<Scheme>().unwrap(), Scheme::AlgebraicMap);
    }
}
