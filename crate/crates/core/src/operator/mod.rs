//! Discretization of the pencil on the half-line: grids, differentiation
//! matrices, quadrature and dense assembly.

mod diff;
mod grid;
mod pencil;
mod testfn;

use std::io::{BufRead, Write};

use faer::linalg::solvers::Solve;
use faer::Mat;

use crate::{c64, Error, Result};

pub use diff::{boundary_indices, diff_ops, DiffOps};
pub use grid::{build_grid, Grid, Scheme, MIN_NODES};
pub use pencil::{assemble_a0, assemble_pencil, Pencil, ProfileTag};
pub use testfn::TestFunction;

pub(crate) use diff::matvec;
pub(crate) use pencil::real_operators;

/// `⟨u, v⟩ = ∑ w_k u_k conj(v_k)`.
pub fn inner_product(g: &Grid, u: &[c64], v: &[c64]) -> Result<c64> {
    for len in [u.len(), v.len()] {
        if len != g.len() {
            return Err(Error::DimensionMismatch { expected: g.len(), found: len });
        }
    }
    Ok(g.weights
        .iter()
        .zip(u.iter().zip(v))
        .filter(|(&w, _)| w != 0.0)
        .map(|(&w, (a, b))| a * b.conj() * w)
        .sum())
}

/// `‖u‖ = sqrt(⟨u, u⟩)`.
pub fn norm(g: &Grid, u: &[c64]) -> Result<f64> {
    Ok(inner_product(g, u, u)?.re.max(0.0).sqrt())
}

/// Both sides of `B⁻¹A₀u = -u'' + (a² + iaR) u + u''(0) e^{-ax}`.
#[derive(Debug, Clone)]
pub struct BinvA0Check {
    pub nodes: Vec<f64>,
    /// Numerical `B⁻¹ A₀ u` (Dirichlet at both ends of the grid).
    pub lhs: Vec<c64>,
    /// Closed form.
    pub rhs: Vec<c64>,
}

impl BinvA0Check {
    /// `max |lhs - rhs| / max |rhs|` over interior nodes.
    pub fn interior_relative_error(&self) -> f64 {
        let n = self.nodes.len();
        let scale = self.rhs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        (1..n - 1).map(|k| (self.lhs[k] - self.rhs[k]).norm()).fold(0.0, f64::max) / scale
    }
}

pub fn apply_binv_a0(g: &Grid, a: f64, r: f64, u: &TestFunction) -> Result<BinvA0Check> {
    if !(a > 0.0) || !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("need a > 0 and R >= 0, got a = {a}, R = {r}")));
    }
    let n = g.len();
    let ops = diff_ops(g);
    let (l2, l4) = real_operators(&ops, a);
    let samples = u.samples(&g.nodes, 0);
    let ar = a * r;

    let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
    let im: Vec<f64> = samples.iter().map(|z| z.im).collect();
    let (l4re, l4im) = (matvec(&l4, &re), matvec(&l4, &im));
    let (l2re, l2im) = (matvec(&l2, &re), matvec(&l2, &im));
    // A₀u = L4 u + iaR L2 u
    let mut f = Mat::<c64>::from_fn(n, 1, |k, _| {
        c64::new(l4re[k], l4im[k]) + c64::new(0.0, ar) * c64::new(l2re[k], l2im[k])
    });
    f[(0, 0)] = c64::new(0.0, 0.0);
    f[(n - 1, 0)] = c64::new(0.0, 0.0);

    let mut m = Mat::<c64>::from_fn(n, n, |i, j| c64::new(l2[(i, j)], 0.0));
    for row in [0, n - 1] {
        for j in 0..n {
            m[(row, j)] = c64::new(if j == row { 1.0 } else { 0.0 }, 0.0);
        }
    }
    let w = m.partial_piv_lu().solve(&f);
    let lhs: Vec<c64> = (0..n).map(|k| w[(k, 0)]).collect();
    if lhs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Singular("B with Dirichlet rows".into()));
    }

    let u2_at_0 = u.derivative(2, 0.0);
    let shift = c64::new(a * a, ar);
    let rhs = g
        .nodes
        .iter()
        .map(|&x| {
            let e = if x.is_finite() { (-a * x).exp() } else { 0.0 };
            -u.derivative(2, x) + shift * u.value(x) + u2_at_0 * e
        })
        .collect();
    Ok(BinvA0Check { nodes: g.nodes.clone(), lhs, rhs })
}

const MATRIX_HEADER: &str = "%%OrrSommerfeld matrix complex general row-major";

/// Writes a dense complex matrix: header line, `rows cols`, then one
/// `re im` pair per line in row-major order.
pub fn write_matrix<W: Write>(mut out: W, m: &Mat<c64>) -> Result<()> {
    writeln!(out, "{MATRIX_HEADER}")?;
    writeln!(out, "{} {}", m.nrows(), m.ncols())?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            writeln!(out, "{:e} {:e}", z.re, z.im)?;
        }
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(input: R) -> Result<Mat<c64>> {
    let bad = |msg: &str| Error::InvalidArgument(format!("malformed matrix file: {msg}"));
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| bad("empty"))??;
    if header.trim() != MATRIX_HEADER {
        return Err(bad("missing header"));
    }
    let dims = lines.next().ok_or_else(|| bad("missing dimensions"))??;
    let dims: Vec<usize> = dims.split_whitespace().map(|t| t.parse().map_err(|_| bad("dimensions"))).collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else { return Err(bad("dimensions")) };
    let mut m = Mat::<c64>::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let line = lines.next().ok_or_else(|| bad("truncated"))??;
            let mut it = line.split_whitespace().map(str::parse::<f64>);
            match (it.next(), it.next()) {
                (Some(Ok(re)), Some(Ok(im))) => m[(i, j)] = c64::new(re, im),
                _ => return Err(bad("entry")),
            }
        }
    }
    Ok(m)
}

/// Writes `A` and `B` to `<prefix>_A.txt` and `<prefix>_B.txt`.
pub fn export_pencil(p: &Pencil, dir: &std::path::Path, prefix: &str) -> Result<()> {
    for (name, m) in [("A", &p.a), ("B", &p.b)] {
        let file = std::fs::File::create(dir.join(format!("{prefix}_{name}.txt")))?;
        write_matrix(std::io::BufWriter::new(file), m)?;
    }
    Ok(())
}
