use super::Spectrum;
use crate::{Error, Result};

/// Two-grid filter: each kept eigenvalue of `coarse` is matched to the
/// nearest kept eigenvalue of `fine`; `drift = |λ - λ'| / (1 + |λ|)` and the
/// eigenvalue stays kept only if `drift ≤ drift_tol`.
pub fn filter_spectrum(coarse: &Spectrum, fine: &Spectrum, drift_tol: f64) -> Result<Spectrum> {
    if let (Some(base), Some(reference)) = (coarse.resolution, fine.resolution) {
        if reference < base {
            return Err(Error::ResolutionMismatch { base, reference });
        }
    }
    if !(drift_tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("drift tolerance must be non-negative, got {drift_tol}")));
    }
    let partners = fine.kept_values();
    let mut out = coarse.clone();
    for e in out.eigenvalues.iter_mut().filter(|e| e.kept) {
        let nearest = partners.iter().map(|p| (e.lambda - p).norm()).fold(f64::INFINITY, f64::min);
        let drift = nearest / (1.0 + e.lambda.norm());
        e.drift = Some(drift);
        e.kept = drift <= drift_tol;
    }
    out.drift_tol = Some(drift_tol);
    Ok(out)
}
