//! Flow profiles `V` on `[0, ∞)` together with `V'` and `V''`.

mod blasius;
mod bounds;
mod table;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use blasius::{solve_blasius, solve_blasius_with, BlasiusOptions, BlasiusSolution};
pub use bounds::{profile_bounds, profile_bounds_with_margin, ProfileBounds, DEFAULT_BOUND_MARGIN};
pub use table::{read_table_csv, write_table_csv, TableRow};

/// `(V, V', V'')` at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
}

impl ProfileSample {
    pub const fn new(v: f64, dv: f64, d2v: f64) -> Self {
        Self { v, dv, d2v }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.dv.is_finite() && self.d2v.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Constant,
    Blasius,
    Tabulated,
    AnalyticExpression,
}

type AnalyticFn = dyn Fn(f64) -> ProfileSample + Send + Sync;

#[derive(Clone)]
enum Source {
    Constant,
    Blasius(Arc<BlasiusSolution>),
    Tabulated(Arc<table::Table>),
    Analytic(Arc<AnalyticFn>),
}

/// An immutable flow profile with asymptotic value `c = lim V(x)`.
#[derive(Clone)]
pub struct FlowProfile {
    source: Source,
    c: f64,
}

impl fmt::Debug for FlowProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlowProfile")
            .field("kind", &self.kind())
            .field("c", &self.c)
            .finish()
    }
}

impl FlowProfile {
    /// `V ≡ c`.
    pub fn constant(c: f64) -> Self {
        Self { source: Source::Constant, c }
    }

    /// Profile from a closed-form expression returning `(V, V', V'')`.
    /// Values for `x = ∞` are taken as `(c, 0, 0)`.
    pub fn analytic<F>(c: f64, f: F) -> Self
    where
        F: Fn(f64) -> ProfileSample + Send + Sync + 'static,
    {
        Self { source: Source::Analytic(Arc::new(f)), c }
    }

    /// Piecewise interpolant through `(x, V, V', V'')` rows: cubic Hermite for
    /// `V` (using `V'`), linear for `V''`, and `(c, 0, 0)` past the last row.
    pub fn tabulated(rows: &[TableRow], c: f64) -> Result<Self> {
        let table = table::Table::new(rows)?;
        Ok(Self { source: Source::Tabulated(Arc::new(table)), c })
    }

    pub fn blasius(solution: BlasiusSolution) -> Self {
        Self { source: Source::Blasius(Arc::new(solution)), c: 1.0 }
    }

    pub fn kind(&self) -> ProfileKind {
        match self.source {
            Source::Constant => ProfileKind::Constant,
            Source::Blasius(_) => ProfileKind::Blasius,
            Source::Tabulated(_) => ProfileKind::Tabulated,
            Source::Analytic(_) => ProfileKind::AnalyticExpression,
        }
    }

    /// Asymptotic value `c`.
    pub fn asymptotic_value(&self) -> f64 {
        self.c
    }

    /// Underlying Blasius solution, if any.
    pub fn blasius_solution(&self) -> Option<&BlasiusSolution> {
        match &self.source {
            Source::Blasius(s) => Some(s),
            _ => None,
        }
    }

    /// Last abscissa carrying non-asymptotic data (`None` for closed forms).
    pub fn support_end(&self) -> Option<f64> {
        match &self.source {
            Source::Blasius(s) => Some(s.x_max()),
            Source::Tabulated(t) => Some(t.x_last()),
            _ => None,
        }
    }

    /// Evaluates `(V, V', V'')`. Negative or NaN abscissae give NaN samples;
    /// `x = ∞` gives `(c, 0, 0)`.
    pub fn eval(&self, x: f64) -> ProfileSample {
        if x.is_nan() || x < 0.0 {
            return ProfileSample::new(f64::NAN, f64::NAN, f64::NAN);
        }
        if x.is_infinite() {
            return ProfileSample::new(self.c, 0.0, 0.0);
        }
        match &self.source {
            Source::Constant => ProfileSample::new(self.c, 0.0, 0.0),
            Source::Blasius(s) => s.eval(x),
            Source::Tabulated(t) => t.eval(x, self.c),
            Source::Analytic(f) => f(x),
        }
    }

    /// Like [`eval`](Self::eval), but rejects non-finite results.
    pub fn try_eval(&self, x: f64) -> Result<ProfileSample> {
        let s = self.eval(x);
        if s.is_finite() {
            Ok(s)
        } else {
            Err(Error::ProfileNotEvaluable { x })
        }
    }

    /// Rows `(x, V, V', V'')` at the given abscissae.
    pub fn sample_rows(&self, xs: &[f64]) -> Vec<TableRow> {
        xs.iter()
            .map(|&x| {
                let s = self.eval(x);
                TableRow { x, v: s.v, dv: s.dv, d2v: s.d2v }
            })
            .collect()
    }

    /// Node abscissae of a tabulated profile.
    pub fn table_nodes(&self) -> Option<Vec<f64>> {
        match &self.source {
            Source::Tabulated(t) => Some(t.nodes().to_vec()),
            _ => None,
        }
    }
}

/// Writes the profile at `xs` as `x,V,dV,d2V` CSV plus the `{"c": …}` sidecar.
pub fn write_profile_csv(path: &std::path::Path, profile: &FlowProfile, xs: &[f64]) -> Result<()> {
    write_table_csv(path, &profile.sample_rows(xs), profile.asymptotic_value())
}

/// Loads a tabulated profile from CSV and its JSON sidecar.
pub fn read_profile_csv(path: &std::path::Path) -> Result<FlowProfile> {
    let (rows, c) = read_table_csv(path)?;
    FlowProfile::tabulated(&rows, c)
}
