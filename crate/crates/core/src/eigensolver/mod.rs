//! Finite generalized eigenvalues of `A u = λ B u`.
//!
//! Default path: eliminate the boundary unknowns using the constraint rows of
//! `A`, then reduce the interior pencil `(Â, B̂)` to the standard problem
//! `B̂⁻¹Â` and compute its eigenvalues (Hessenberg + shifted QR). When `B̂` is
//! too ill-conditioned, or the constraint block is singular, the QZ path on
//! the pencil itself is used instead and eigenvalues with vanishing `β` are
//! counted as infinite.
//!
//! Every finite eigenvalue gets a residual `‖(A - λB) v‖ / ‖v‖` where `v`
//! comes from one step of inverse iteration on the full pencil. Residuals are
//! independent per eigenvalue and run through [`Execution`].

mod filter;
mod io;

use faer::linalg::solvers::Solve;
use faer::Mat;
use serde::Serialize;

use crate::exec::Execution;
use crate::operator::Pencil;
use crate::{c64, Error, Result};

pub use filter::filter_spectrum;
pub use io::{EigenvalueRecord, SpectrumDocument};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative residual threshold: kept iff
    /// `residual ≤ residual_tol · (‖A‖_F + |λ| ‖B‖_F)`.
    pub residual_tol: f64,
    /// Eigenvalues with `|λ|` above this are never kept.
    pub magnitude_cutoff: f64,
    /// `cond₂(B̂)` above which the QZ path is taken.
    pub condition_limit: f64,
    /// Force the QZ path.
    pub force_qz: bool,
    pub execution: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-8,
            magnitude_cutoff: 1e8,
            condition_limit: 1e10,
            force_qz: false,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverPath {
    Reduction,
    Qz,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub lambda: c64,
    pub residual: f64,
    pub kept: bool,
    /// Relative distance to the nearest eigenvalue at the finer resolution.
    pub drift: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted by `Re λ` ascending (ties by `Im λ`).
    pub eigenvalues: Vec<Eigenvalue>,
    /// Pencil dimension.
    pub dim: usize,
    /// Collocation nodes `N`, when known.
    pub resolution: Option<usize>,
    pub x_max: Option<f64>,
    pub wave_number: Option<f64>,
    pub reynolds: Option<f64>,
    pub path: SolverPath,
    /// `cond₂(B̂)` of the interior pencil.
    pub condition_estimate: f64,
    /// Eigenvalues at infinity (zero `B` rows).
    pub infinite_count: usize,
    pub norm_a: f64,
    pub norm_b: f64,
    pub residual_tol: f64,
    pub magnitude_cutoff: f64,
    pub drift_tol: Option<f64>,
}

impl Spectrum {
    pub fn kept(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.eigenvalues.iter().filter(|e| e.kept)
    }

    pub fn kept_values(&self) -> Vec<c64> {
        self.kept().map(|e| e.lambda).collect()
    }

    /// `residual_tol · (‖A‖_F + |λ| ‖B‖_F)`.
    pub fn residual_threshold(&self, lambda: c64) -> f64 {
        self.residual_tol * (self.norm_a + lambda.norm() * self.norm_b)
    }
}

fn frobenius(m: &Mat<c64>) -> f64 {
    let mut acc = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            acc += m[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

fn is_finite(z: c64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn all_finite(m: &Mat<c64>) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| is_finite(m[(i, j)])))
}

fn submatrix(m: &Mat<c64>, rows: &[usize], cols: &[usize]) -> Mat<c64> {
    Mat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Interior pencil after eliminating the unknowns at the boundary rows.
struct Reduced {
    a: Mat<c64>,
    b: Mat<c64>,
}

fn reduce(p: &Pencil) -> Option<Reduced> {
    let n = p.dim();
    if p.boundary_rows.is_empty() {
        return Some(Reduced { a: p.a.clone(), b: p.b.clone() });
    }
    let bd = &p.boundary_rows;
    let interior: Vec<usize> = (0..n).filter(|i| !bd.contains(i)).collect();
    let cb = submatrix(&p.a, bd, bd);
    let ci = submatrix(&p.a, bd, &interior);
    // u_b = G u_i with G = -C_b⁻¹ C_i
    let mut g = cb.partial_piv_lu().solve(&ci);
    if !all_finite(&g) {
        return None;
    }
    for j in 0..g.ncols() {
        for i in 0..g.nrows() {
            g[(i, j)] = -g[(i, j)];
        }
    }
    let a = &submatrix(&p.a, &interior, &interior) + &submatrix(&p.a, &interior, bd) * &g;
    let b = &submatrix(&p.b, &interior, &interior) + &submatrix(&p.b, &interior, bd) * &g;
    Some(Reduced { a, b })
}

fn condition_number(m: &Mat<c64>) -> f64 {
    match m.singular_values() {
        Ok(s) if !s.is_empty() => {
            let max = s.iter().cloned().fold(0.0, f64::max);
            let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
            if min > 0.0 {
                max / min
            } else {
                f64::INFINITY
            }
        }
        _ => f64::INFINITY,
    }
}

/// Finite eigenvalues of `(a, b)` by QZ, plus the count of infinite ones.
fn qz_eigenvalues(a: &Mat<c64>, b: &Mat<c64>) -> Result<(Vec<c64>, usize)> {
    let gevd = a.generalized_eigen(b).map_err(|e| Error::EigenSolver(format!("QZ: {e:?}")))?;
    let (sa, sb) = (gevd.S_a(), gevd.S_b());
    let n = a.nrows();
    let small = 64.0 * f64::EPSILON * frobenius(b).max(f64::MIN_POSITIVE) * n as f64;
    let mut finite = Vec::with_capacity(n);
    let mut infinite = 0;
    for k in 0..n {
        let (alpha, beta) = (sa[k], sb[k]);
        if beta.norm() <= small {
            infinite += 1;
        } else {
            let lambda = alpha / beta;
            if is_finite(lambda) {
                finite.push(lambda);
            } else {
                infinite += 1;
            }
        }
    }
    Ok((finite, infinite))
}

pub fn solve_pencil(p: &Pencil) -> Result<Spectrum> {
    solve_pencil_with(p, &SolverOptions::default())
}

pub fn solve_pencil_with(p: &Pencil, opts: &SolverOptions) -> Result<Spectrum> {
    let n = p.dim();
    if n == 0 || p.b.nrows() != n || p.b.ncols() != n || p.a.ncols() != n {
        return Err(Error::InvalidArgument("pencil matrices must be square and of equal size".into()));
    }
    if !all_finite(&p.a) || !all_finite(&p.b) {
        return Err(Error::InvalidArgument("pencil contains non-finite entries".into()));
    }
    let norm_a = frobenius(&p.a);
    let norm_b = frobenius(&p.b);

    let reduced = reduce(p);
    let (values, infinite_from_qz, path, condition_estimate) = match reduced {
        Some(red) => {
            let cond = condition_number(&red.b);
            let eliminated = n - red.a.nrows();
            if !opts.force_qz && cond <= opts.condition_limit {
                let m = red.b.partial_piv_lu().solve(&red.a);
                if all_finite(&m) {
                    let values = m.eigenvalues().map_err(|e| Error::EigenSolver(format!("QR: {e:?}")))?;
                    (values, eliminated, SolverPath::Reduction, cond)
                } else {
                    let (v, inf) = qz_eigenvalues(&red.a, &red.b)?;
                    (v, inf + eliminated, SolverPath::Qz, cond)
                }
            } else {
                log::debug!("cond(B) = {cond:e}: using QZ");
                let (v, inf) = qz_eigenvalues(&red.a, &red.b)?;
                (v, inf + eliminated, SolverPath::Qz, cond)
            }
        }
        None => {
            let (v, inf) = qz_eigenvalues(&p.a, &p.b)?;
            (v, inf, SolverPath::Qz, f64::INFINITY)
        }
    };

    let residuals = opts.execution.map(&values, |&lambda| inverse_iteration_residual(p, lambda));
    let mut eigenvalues = Vec::with_capacity(values.len());
    for (lambda, residual) in values.into_iter().zip(residuals) {
        let residual = residual?;
        let threshold = opts.residual_tol * (norm_a + lambda.norm() * norm_b);
        let kept = is_finite(lambda) && lambda.norm() <= opts.magnitude_cutoff && residual <= threshold;
        eigenvalues.push(Eigenvalue { lambda, residual, kept, drift: None });
    }
    eigenvalues.sort_by(|x, y| x.lambda.re.total_cmp(&y.lambda.re).then(x.lambda.im.total_cmp(&y.lambda.im)));

    let finite_param = |v: f64| if v.is_finite() { Some(v) } else { None };
    Ok(Spectrum {
        eigenvalues,
        dim: n,
        resolution: p.resolution(),
        x_max: p.grid.as_ref().map(|g| g.x_max()),
        wave_number: finite_param(p.wave_number),
        reynolds: finite_param(p.reynolds),
        path,
        condition_estimate,
        infinite_count: infinite_from_qz,
        norm_a,
        norm_b,
        residual_tol: opts.residual_tol,
        magnitude_cutoff: opts.magnitude_cutoff,
        drift_tol: None,
    })
}

/// `‖(A - λB) v‖₂ / ‖v‖₂`.
pub fn residual(p: &Pencil, lambda: c64, v: &[c64]) -> Result<f64> {
    if v.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: v.len() });
    }
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if vnorm == 0.0 {
        return Err(Error::InvalidArgument("residual of the zero vector".into()));
    }
    let r = p.apply_shifted(lambda, v);
    Ok(r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / vnorm)
}

/// Fixed start vector so residuals are reproducible.
fn start_vector(n: usize) -> Mat<c64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    let scale = 1.0 / (n as f64).sqrt();
    Mat::from_fn(n, 1, |k, _| {
        let phase = std::f64::consts::TAU * GOLDEN * k as f64;
        c64::new(phase.cos(), phase.sin()) * scale
    })
}

/// One inverse-iteration step for the near-null vector of `A - λB`, then
/// its residual.
pub fn inverse_iteration_vector(p: &Pencil, lambda: c64) -> Result<Vec<c64>> {
    let n = p.dim();
    let shifted = Mat::from_fn(n, n, |i, j| p.a[(i, j)] - lambda * p.b[(i, j)]);
    let rhs = start_vector(n);
    let mut v = shifted.partial_piv_lu().solve(&rhs);
    if !all_finite(&v) || (0..n).all(|k| v[(k, 0)].norm() == 0.0) {
        // singular to working precision: tiny Tikhonov shift
        let tau = 1e-12 * (frobenius(&p.a) + lambda.norm() * frobenius(&p.b)).max(1.0);
        let regularized = Mat::from_fn(n, n, |i, j| shifted[(i, j)] + if i == j { c64::new(tau, 0.0) } else { c64::new(0.0, 0.0) });
        v = regularized.partial_piv_lu().solve(&rhs);
        if !all_finite(&v) {
            return Err(Error::Singular(format!("inverse iteration at λ = {lambda}")));
        }
    }
    let norm = (0..n).map(|k| v[(k, 0)].norm_sqr()).sum::<f64>().sqrt();
    Ok((0..n).map(|k| v[(k, 0)] / norm).collect())
}

fn inverse_iteration_residual(p: &Pencil, lambda: c64) -> Result<f64> {
    let v = inverse_iteration_vector(p, lambda)?;
    residual(p, lambda, &v)
}
