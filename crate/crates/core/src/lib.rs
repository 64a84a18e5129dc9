//! Numerical realization of the Orr-Sommerfeld spectral problem on the
//! half-line `[0, ∞)`:
//!
//! ```text
//! (-D² + a²)² u + i a R [V (-D² + a²) u + V'' u] = λ (-D² + a²) u,
//! u(0) = u'(0) = u(∞) = u'(∞) = 0.
//! ```
//!
//! The crate is organized bottom-up:
//!
//! - [`profiles`]: flow profiles `V` (constant, Blasius, tabulated) and the
//!   bound constants `V_min, V_max, |V'|_max, V''_min, V''_max`.
//! - [`operator`]: Chebyshev collocation grids, differentiation matrices,
//!   Clenshaw-Curtis quadrature and assembly of the dense pencil `(A, B)`.
//! - [`eigensolver`]: finite generalized eigenvalues of the pencil with
//!   residuals and two-grid filtering of unresolved modes.
//! - [`enclosure`]: the essential-spectrum ray `a² + iaRc + [0, ∞)` and the
//!   analytical eigenvalue enclosures, with exact membership/distance
//!   queries and a Rayleigh-quotient verifier.
//!
//! Data-parallel loops (residuals, batch membership, β batches) go through
//! [`exec`], which uses rayon when the `parallel` feature is on and falls
//! back to plain iterators otherwise.

pub mod eigensolver;
pub mod enclosure;
mod error;
pub mod exec;
pub mod operator;
pub mod profiles;

pub use error::{Error, Result};

/// Complex scalar used throughout (re-exported from faer, which is
/// `num_complex::Complex<f64>`).
pub use faer::c64;

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
