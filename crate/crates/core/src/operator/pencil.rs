//! Dense assembly of `A u = λ B u` with
//! `A = (-D²+a²)² + iaR [V (-D²+a²) + V'']` and `B = -D² + a²`.

use faer::Mat;
use serde::Serialize;

use super::diff::{boundary_indices, diff_ops, DiffOps};
use super::grid::Grid;
use crate::profiles::{FlowProfile, ProfileKind};
use crate::{c64, Error, Result};

/// Profile metadata carried along with a pencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileTag {
    pub kind: ProfileKind,
    pub c: f64,
}

#[derive(Debug, Clone)]
pub struct Pencil {
    pub a: Mat<c64>,
    pub b: Mat<c64>,
    pub wave_number: f64,
    pub reynolds: f64,
    /// Rows of `A` holding boundary constraints; the same rows of `B` are zero.
    pub boundary_rows: Vec<usize>,
    pub grid: Option<Grid>,
    pub profile: Option<ProfileTag>,
}

impl Pencil {
    /// Generic pencil without grid or boundary bookkeeping.
    pub fn from_matrices(a: Mat<c64>, b: Mat<c64>) -> Result<Self> {
        if a.nrows() != a.ncols() || b.nrows() != b.ncols() {
            return Err(Error::InvalidArgument("pencil matrices must be square".into()));
        }
        if a.nrows() != b.nrows() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.nrows() });
        }
        Ok(Self {
            a,
            b,
            wave_number: f64::NAN,
            reynolds: f64::NAN,
            boundary_rows: Vec::new(),
            grid: None,
            profile: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// Number of collocation nodes, when the pencil comes from a grid.
    pub fn resolution(&self) -> Option<usize> {
        self.grid.as_ref().map(Grid::len)
    }

    /// `(A - λB) v`.
    pub fn apply_shifted(&self, lambda: c64, v: &[c64]) -> Vec<c64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = c64::new(0.0, 0.0);
                for j in 0..n {
                    acc += (self.a[(i, j)] - lambda * self.b[(i, j)]) * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn apply_a(&self, v: &[c64]) -> Vec<c64> {
        complex_matvec(&self.a, v)
    }

    pub fn apply_b(&self, v: &[c64]) -> Vec<c64> {
        complex_matvec(&self.b, v)
    }
}

pub(crate) fn complex_matvec(m: &Mat<c64>, v: &[c64]) -> Vec<c64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// `L2 = -D2 + a² I` and `L4 = D4 - 2a² D2 + a⁴ I` (no boundary rows).
pub(crate) fn real_operators(ops: &DiffOps, a: f64) -> (Mat<f64>, Mat<f64>) {
    let n = ops.len();
    let a2 = a * a;
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let l2 = Mat::from_fn(n, n, |i, j| -ops.d2[(i, j)] + a2 * delta(i, j));
    let l4 = Mat::from_fn(n, n, |i, j| ops.d4[(i, j)] - 2.0 * a2 * ops.d2[(i, j)] + a2 * a2 * delta(i, j));
    (l2, l4)
}

fn check_parameters(a: f64, r: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("wave number must be positive, got {a}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("Reynolds number must be non-negative, got {r}")));
    }
    Ok(())
}

fn border(a: &mut Mat<c64>, b: &mut Mat<c64>, ops: &DiffOps) -> Vec<usize> {
    let idx = boundary_indices(ops.len());
    for (row, values) in idx.into_iter().zip(ops.clamped_rows()) {
        for (j, v) in values.into_iter().enumerate() {
            a[(row, j)] = c64::new(v, 0.0);
            b[(row, j)] = c64::new(0.0, 0.0);
        }
    }
    idx.to_vec()
}

fn assemble_with(
    g: &Grid,
    a: f64,
    r: f64,
    profile: Option<&FlowProfile>,
) -> Result<Pencil> {
    check_parameters(a, r)?;
    let ops = diff_ops(g);
    let n = g.len();
    let (l2, l4) = real_operators(&ops, a);
    let ar = a * r;
    let mut b = Mat::from_fn(n, n, |i, j| c64::new(l2[(i, j)], 0.0));
    let mut amat = match profile {
        None => Mat::from_fn(n, n, |i, j| c64::new(l4[(i, j)], ar * l2[(i, j)])),
        Some(p) => {
            let samples = g.nodes.iter().map(|&x| p.try_eval(x)).collect::<Result<Vec<_>>>()?;
            Mat::from_fn(n, n, |i, j| {
                let s = &samples[i];
                let diag = if i == j { s.d2v } else { 0.0 };
                c64::new(l4[(i, j)], ar * (s.v * l2[(i, j)] + diag))
            })
        }
    };
    let boundary_rows = border(&mut amat, &mut b, &ops);
    Ok(Pencil {
        a: amat,
        b,
        wave_number: a,
        reynolds: r,
        boundary_rows,
        grid: Some(g.clone()),
        profile: profile.map(|p| ProfileTag { kind: p.kind(), c: p.asymptotic_value() }),
    })
}

pub fn assemble_pencil(p: &FlowProfile, a: f64, r: f64, g: &Grid) -> Result<Pencil> {
    assemble_with(g, a, r, Some(p))
}

/// The unperturbed pencil `A₀ = (-D²+a²)² + iaR (-D²+a²)`, bordered the same way.
pub fn assemble_a0(a: f64, r: f64, g: &Grid) -> Result<Pencil> {
    let mut pencil = assemble_with(g, a, r, None)?;
    pencil.profile = Some(ProfileTag { kind: ProfileKind::Constant, c: 1.0 });
    Ok(pencil)
}
