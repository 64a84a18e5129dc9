//! Enclosures of the spectrum: the essential ray, closed-form regions and
//! the quadratic-form decomposition behind them.

mod beta;
mod ray;
mod region;
mod verify;

pub use beta::{beta_decomposition, BetaContext, BetaDecomposition};
pub use ray::{essential_ray, EssentialRay};
pub use region::{box_bounds, region, BoundaryPoint, BoxBounds, EnclosureRegion, Variant};
pub use verify::{verify_spectrum, verify_values, EigenvalueVerdict, VerifyReport, VerifySummary};
