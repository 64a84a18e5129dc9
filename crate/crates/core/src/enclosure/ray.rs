
use crate::{c64, Error, Result};

/// `{a² + iaRc + μ : μ ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssentialRay {
    pub base: c64,
}

pub fn essential_ray(a: f64, r: f64, c: f64) -> Result<EssentialRay> {
    if !(a > 0.0 && r > 0.0) {
        return Err(Error::InvalidArgument(format!("need a > 0 and R > 0, got a = {a}, R = {r}")));
    }
    Ok(EssentialRay { base: c64::new(a * a, a * r * c) })
}

impl EssentialRay {
    /// Euclidean distance from `z` to the ray.
    pub fn distance(&self, z: c64) -> f64 {
        (self.base.re - z.re).max(0.0).hypot(z.im - self.base.im)
    }

    /// Points `base` and `base + (re_cap - Re base)`.
    pub fn polyline(&self, re_cap: f64) -> Vec<c64> {
        vec![self.base, c64::new(re_cap.max(self.base.re), self.base.im)]
    }
}
