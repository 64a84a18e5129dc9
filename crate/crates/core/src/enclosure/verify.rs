use serde::Serialize;

use super::{EnclosureRegion, EssentialRay, Variant};
use crate::eigensolver::Spectrum;
use crate::{c64, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueVerdict {
    pub re: f64,
    pub im: f64,
    pub inside: bool,
    pub region_distance: f64,
    pub ray_distance: f64,
    /// `Im λ ≤ aR·c + slack`.
    pub below_ray: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifySummary {
    pub kept: usize,
    pub inside: usize,
    pub below_ray: usize,
    pub max_region_distance: f64,
    pub max_ray_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub variant: Variant,
    /// Relative slack; a point passes within `slack·(1+|λ|)`.
    pub slack: f64,
    pub all_inside: bool,
    pub all_below_ray: bool,
    pub summary: VerifySummary,
    pub eigenvalues: Vec<EigenvalueVerdict>,
}

/// Checks every kept eigenvalue of `s` against `reg` and the ray.
/// An empty kept set passes vacuously.
pub fn verify_spectrum(s: &Spectrum, reg: &EnclosureRegion, ray: &EssentialRay, slack: f64) -> VerifyReport {
    verify_values(&s.kept_values(), reg, ray, slack)
}

pub fn verify_values(values: &[c64], reg: &EnclosureRegion, ray: &EssentialRay, slack: f64) -> VerifyReport {
    let verdicts: Vec<EigenvalueVerdict> = values
        .iter()
        .map(|&z| {
            let allowance = slack * (1.0 + z.norm());
            let region_distance = reg.distance(z);
            EigenvalueVerdict {
                re: z.re,
                im: z.im,
                inside: reg.contains(z) || region_distance <= allowance,
                region_distance,
                ray_distance: ray.distance(z),
                below_ray: z.im <= ray.base.im + allowance,
            }
        })
        .collect();
    let count = |f: fn(&EigenvalueVerdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let max = |f: fn(&EigenvalueVerdict) -> f64| verdicts.iter().map(f).fold(0.0, f64::max);
    let summary = VerifySummary {
        kept: verdicts.len(),
        inside: count(|v| v.inside),
        below_ray: count(|v| v.below_ray),
        max_region_distance: max(|v| v.region_distance),
        max_ray_distance: max(|v| v.ray_distance),
    };
    VerifyReport {
        schema: SCHEMA_VERSION,
        variant: reg.variant,
        slack,
        all_inside: summary.inside == summary.kept,
        all_below_ray: summary.below_ray == summary.kept,
        summary,
        eigenvalues: verdicts,
    }
}
