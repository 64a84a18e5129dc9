//! Collocation differentiation matrices on a mapped Chebyshev grid.

use std::f64::consts::PI;

use faer::Mat;

use super::grid::{Grid, Scheme};

/// Dense `D1`, `D2 = D1²`, `D4 = D2²` acting on nodal values.
///
/// `far_derivative` is the row used for the `u' = 0` condition at the far
/// end: `D1` for the truncated scheme, `d/dt` for the algebraic map (where
/// `d/dx` degenerates at `x = ∞`).
#[derive(Debug, Clone)]
pub struct DiffOps {
    pub d1: Mat<f64>,
    pub d2: Mat<f64>,
    pub d4: Mat<f64>,
    pub far_derivative: Vec<f64>,
}

/// Row indices replaced by boundary conditions: `u(0)`, `u'(0)`, far `u'`,
/// far `u`.
pub fn boundary_indices(n: usize) -> [usize; 4] {
    [0, 1, n - 2, n - 1]
}

/// Chebyshev differentiation matrix `d/dt` on `t_j = cos(jπ/n)`.
pub(crate) fn cheb_d1(n_nodes: usize) -> Mat<f64> {
    let n = n_nodes - 1;
    let nf = n as f64;
    let weight = |j: usize| if j == 0 || j == n { 2.0 } else { 1.0 };
    let mut d = Mat::<f64>::zeros(n_nodes, n_nodes);
    for i in 0..n_nodes {
        let mut row_sum = 0.0;
        for j in 0..n_nodes {
            if i == j {
                continue;
            }
            // t_i - t_j = 2 sin((i+j)π/2n) sin((j-i)π/2n)
            let diff = 2.0
                * (PI * (i + j) as f64 / (2.0 * nf)).sin()
                * (PI * (j as f64 - i as f64) / (2.0 * nf)).sin();
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            let v = weight(i) / weight(j) * sign / diff;
            d[(i, j)] = v;
            row_sum += v;
        }
        d[(i, i)] = -row_sum;
    }
    d
}

pub fn diff_ops(g: &Grid) -> DiffOps {
    let n = g.len();
    let dt = cheb_d1(n);
    let d1 = Mat::from_fn(n, n, |i, j| g.dt_dx[i] * dt[(i, j)]);
    let d2 = &d1 * &d1;
    let d4 = &d2 * &d2;
    let far_derivative = match g.scheme {
        Scheme::TruncatedChebyshev => (0..n).map(|j| d1[(n - 1, j)]).collect(),
        Scheme::AlgebraicMap => (0..n).map(|j| dt[(n - 1, j)]).collect(),
    };
    DiffOps { d1, d2, d4, far_derivative }
}

impl DiffOps {
    pub fn len(&self) -> usize {
        self.d1.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The four clamped constraint rows, in the order of [`boundary_indices`].
    pub fn clamped_rows(&self) -> [Vec<f64>; 4] {
        let n = self.len();
        let mut first = vec![0.0; n];
        first[0] = 1.0;
        let mut last = vec![0.0; n];
        last[n - 1] = 1.0;
        let slope0 = (0..n).map(|j| self.d1[(0, j)]).collect();
        [first, slope0, self.far_derivative.clone(), last]
    }

    /// `D4` with the boundary rows replaced by the clamped constraints.
    pub fn clamped_d4(&self) -> Mat<f64> {
        let mut d4 = self.d4.clone();
        for (row, values) in boundary_indices(self.len()).into_iter().zip(self.clamped_rows()) {
            for (j, v) in values.into_iter().enumerate() {
                d4[(row, j)] = v;
            }
        }
        d4
    }
}

/// `M v` for a real matrix and real vector.
pub(crate) fn matvec(m: &Mat<f64>, v: &[f64]) -> Vec<f64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::grid::build_grid;

    fn max_interior_err(g: &Grid, got: &[f64], exact: impl Fn(f64) -> f64) -> f64 {
        let n = g.len();
        (2..n - 2).map(|k| (got[k] - exact(g.nodes[k])).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn d1_annihilates_constants() {
        let g = build_grid(Scheme::TruncatedChebyshev, 64, 100.0).unwrap();
        let ops = diff_ops(&g);
        let d = matvec(&ops.d1, &vec![1.0; 64]);
        assert!(d.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn d2_of_sine() {
        let g = build_grid(Scheme::TruncatedChebyshev, 200, 100.0).unwrap();
        let ops = diff_ops(&g);
        let u: Vec<f64> = g.nodes.iter().map(|x| x.sin()).collect();
        let err = max_interior_err(&g, &matvec(&ops.d2, &u), |x| -x.sin());
        assert!(err <= 1e-6, "D2 sin error {err:e}");
    }

    #[test]
    fn d4_of_x2_exp() {
        let g = build_grid(Scheme::TruncatedChebyshev, 200, 100.0).unwrap();
        let ops = diff_ops(&g);
        let u: Vec<f64> = g.nodes.iter().map(|x| x * x * (-x).exp()).collect();
        let err = max_interior_err(&g, &matvec(&ops.d4, &u), |x| (x * x - 8.0 * x + 12.0) * (-x).exp());
        assert!(err <= 1e-4, "D4 error {err:e}");
    }

    #[test]
    fn d2_consistent_with_d1_on_polynomials() {
        let g = build_grid(Scheme::TruncatedChebyshev, 32, 2.0).unwrap();
        let ops = diff_ops(&g);
        let u: Vec<f64> = g.nodes.iter().map(|x| x.powi(5) - 3.0 * x * x).collect();
        let d2 = matvec(&ops.d2, &u);
        for (k, x) in g.nodes.iter().enumerate() {
            assert!((d2[k] - (20.0 * x.powi(3) - 6.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn algebraic_map_derivatives() {
        let g = build_grid(Scheme::AlgebraicMap, 96, 4.0).unwrap();
        let ops = diff_ops(&g);
        let u: Vec<f64> = g.nodes.iter().map(|&x| if x.is_finite() { (-x).exp() } else { 0.0 }).collect();
        let d2 = matvec(&ops.d2, &u);
        for k in 1..g.len() - 1 {
            if g.nodes[k] < 30.0 {
                assert!((d2[k] - u[k]).abs() < 1e-6, "x = {}", g.nodes[k]);
            }
        }
    }

    #[test]
    fn clamped_rows_replace_boundary() {
        let g = build_grid(Scheme::TruncatedChebyshev, 16, 10.0).unwrap();
        let ops = diff_ops(&g);
        let d4 = ops.clamped_d4();
        assert_eq!(d4[(0, 0)], 1.0);
        assert_eq!(d4[(15, 15)], 1.0);
        assert_eq!(d4[(1, 3)], ops.d1[(0, 3)]);
        assert_eq!(d4[(14, 3)], ops.d1[(15, 3)]);
        assert_eq!(d4[(7, 7)], ops.d4[(7, 7)]);
    }
}
