//! Enclosure regions built from the strip `S = [a², ∞) × i aR [V_min, V_max]`
//! and the radius `r = (R/2) |V'|_max`:
//!
//! - `thm31`: `S ⊕ rΔ` (closed disc),
//! - `thm33`: `S ⊕ rΔ⁻` (lower half disc), requires `V'' ≤ 0`,
//! - `cor32-box`: `Re ≥ a² - r`, `Im ∈ [aR V_min - r, aR V_max + r]`,
//! - `cor32-box-improved`: as above with `Im ≤ aR V_max`, requires `V'' ≤ 0`.
//!
//! `S ⊕ rΔ⁻` is the strip grown left and down by `r`, with a sharp top-left
//! corner and a quarter-disc rounding at the bottom-left corner.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::profiles::ProfileBounds;
use crate::{c64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Thm31,
    Thm33,
    Cor32Box,
    Cor32BoxImproved,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Thm31, Variant::Thm33, Variant::Cor32Box, Variant::Cor32BoxImproved];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Thm31 => "thm31",
            Variant::Thm33 => "thm33",
            Variant::Cor32Box => "cor32-box",
            Variant::Cor32BoxImproved => "cor32-box-improved",
        }
    }

    /// Whether the variant needs `V'' ≤ 0`.
    pub fn needs_concavity(self) -> bool {
        matches!(self, Variant::Thm33 | Variant::Cor32BoxImproved)
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .or(match s {
                "cor32" => Some(Variant::Cor32Box),
                "cor32-improved" => Some(Variant::Cor32BoxImproved),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown region variant {s:?}")))
    }
}

/// Separate bounds on real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxBounds {
    pub re_min: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BoxBounds {
    pub fn contains(&self, z: c64) -> bool {
        z.re >= self.re_min && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// A boundary vertex with its outward unit normal (the bisector at corners).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub z: c64,
    pub normal: c64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnclosureRegion {
    pub variant: Variant,
    pub a: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub bounds: ProfileBounds,
    /// `(R/2) |V'|_max`.
    pub radius: f64,
    /// `a²`, left edge of the strip.
    pub strip_re_min: f64,
    /// `aR V_min`.
    pub strip_im_min: f64,
    /// `aR V_max`.
    pub strip_im_max: f64,
}

fn check(variant: Variant, a: f64, r: f64, b: &ProfileBounds) -> Result<()> {
    if !(a > 0.0 && r > 0.0) {
        return Err(Error::InvalidArgument(format!("need a > 0 and R > 0, got a = {a}, R = {r}")));
    }
    if !(b.v_min <= b.v_max && b.d2v_min <= b.d2v_max && b.dv_abs_max >= 0.0) {
        return Err(Error::InvalidArgument(format!("inconsistent profile bounds {b:?}")));
    }
    if variant.needs_concavity() && !b.concave() {
        return Err(Error::HypothesisViolated { d2v_max: b.d2v_max });
    }
    Ok(())
}

pub fn region(variant: Variant, a: f64, r: f64, b: &ProfileBounds) -> Result<EnclosureRegion> {
    check(variant, a, r, b)?;
    Ok(EnclosureRegion {
        variant,
        a,
        r,
        bounds: *b,
        radius: 0.5 * r * b.dv_abs_max,
        strip_re_min: a * a,
        strip_im_min: a * r * b.v_min,
        strip_im_max: a * r * b.v_max,
    })
}

/// Real/imaginary bounds: the unimproved box for `thm31`/`cor32-box`, the
/// improved one (`Im ≤ aR V_max`) for `thm33`/`cor32-box-improved`.
pub fn box_bounds(variant: Variant, a: f64, r: f64, b: &ProfileBounds) -> Result<BoxBounds> {
    Ok(region(variant, a, r, b)?.box_bounds())
}

fn unit(re: f64, im: f64) -> c64 {
    let z = c64::new(re, im);
    z / z.norm()
}

impl EnclosureRegion {
    /// Magnitude used to scale round-off allowances.
    pub fn scale(&self) -> f64 {
        1.0 + self.strip_re_min.abs() + self.strip_im_min.abs().max(self.strip_im_max.abs()) + self.radius
    }

    fn tol(&self) -> f64 {
        8.0 * f64::EPSILON * self.scale()
    }

    pub fn box_bounds(&self) -> BoxBounds {
        let improved = self.variant.needs_concavity();
        BoxBounds {
            re_min: self.strip_re_min - self.radius,
            im_min: self.strip_im_min - self.radius,
            im_max: if improved { self.strip_im_max } else { self.strip_im_max + self.radius },
        }
    }

    /// Distance from `z` to the strip `S`, by clamping.
    pub fn strip_distance(&self, z: c64) -> f64 {
        let dx = (self.strip_re_min - z.re).max(0.0);
        let dy = (self.strip_im_min - z.im).max(z.im - self.strip_im_max).max(0.0);
        dx.hypot(dy)
    }

    /// Closed-form membership (closed sets, with an 8-ulp allowance for
    /// points computed on the boundary).
    pub fn contains(&self, z: c64) -> bool {
        let tol = self.tol();
        let (x0, lo, hi, r) = (self.strip_re_min, self.strip_im_min, self.strip_im_max, self.radius);
        match self.variant {
            Variant::Thm31 => self.strip_distance(z) <= r + tol,
            Variant::Thm33 => {
                z.re >= x0 - r - tol
                    && z.im <= hi + tol
                    && z.im >= lo - r - tol
                    && (!(z.re < x0 && z.im < lo) || (z.re - x0).hypot(z.im - lo) <= r + tol)
            }
            Variant::Cor32Box | Variant::Cor32BoxImproved => {
                let b = self.box_bounds();
                z.re >= b.re_min - tol && z.im >= b.im_min - tol && z.im <= b.im_max + tol
            }
        }
    }

    /// Euclidean distance from `z` to the region (zero inside).
    pub fn distance(&self, z: c64) -> f64 {
        let (x0, lo, hi, r) = (self.strip_re_min, self.strip_im_min, self.strip_im_max, self.radius);
        let rect = |re_min: f64, im_min: f64, im_max: f64| {
            let dx = (re_min - z.re).max(0.0);
            let dy = (im_min - z.im).max(z.im - im_max).max(0.0);
            dx.hypot(dy)
        };
        match self.variant {
            Variant::Thm31 => (self.strip_distance(z) - r).max(0.0),
            Variant::Thm33 => {
                // S ⊕ rΔ⁻ = [x0-r,∞)×[lo,hi] ∪ [x0,∞)×[lo-r,hi] ∪ ((x0,lo) + rΔ⁻)
                let left = rect(x0 - r, lo, hi);
                let down = rect(x0, lo - r, hi);
                let corner = c64::new(x0, lo);
                let half_disc = if z.im <= lo {
                    ((z - corner).norm() - r).max(0.0)
                } else {
                    let px = z.re.clamp(x0 - r, x0 + r);
                    (z - c64::new(px, lo)).norm()
                };
                left.min(down).min(half_disc)
            }
            Variant::Cor32Box | Variant::Cor32BoxImproved => {
                let b = self.box_bounds();
                rect(b.re_min, b.im_min, b.im_max)
            }
        }
    }

    /// Default clipping abscissa for boundary polylines: `a² + 3r + 10`.
    pub fn default_re_cap(&self) -> f64 {
        self.strip_re_min + 3.0 * self.radius + 10.0
    }

    /// Boundary of the region clipped to `Re ≤ re_cap`, traversed from the
    /// top-right to the bottom-right; circular arcs get `n_pts` samples each.
    pub fn boundary(&self, re_cap: f64, n_pts: usize) -> Result<Vec<BoundaryPoint>> {
        if !(re_cap > self.strip_re_min) {
            return Err(Error::InvalidArgument(format!("re_cap {re_cap} must exceed a² = {}", self.strip_re_min)));
        }
        let n_pts = n_pts.max(2);
        let (x0, lo, hi, r) = (self.strip_re_min, self.strip_im_min, self.strip_im_max, self.radius);
        let mut pts = Vec::new();
        let mut push = |re: f64, im: f64, normal: c64| pts.push(BoundaryPoint { z: c64::new(re, im), normal });
        let arc = |push: &mut dyn FnMut(f64, f64, c64), cx: f64, cy: f64, from: f64| {
            for k in 0..n_pts {
                let theta = from + FRAC_PI_2 * k as f64 / (n_pts - 1) as f64;
                let (s, c) = theta.sin_cos();
                push(cx + r * c, cy + r * s, c64::new(c, s));
            }
        };
        match self.variant {
            Variant::Thm31 => {
                push(re_cap, hi + r, c64::new(0.0, 1.0));
                arc(&mut push, x0, hi, FRAC_PI_2);
                arc(&mut push, x0, lo, PI);
                push(re_cap, lo - r, c64::new(0.0, -1.0));
            }
            Variant::Thm33 => {
                push(re_cap, hi, c64::new(0.0, 1.0));
                push(x0 - r, hi, unit(-1.0, 1.0));
                arc(&mut push, x0, lo, PI);
                push(re_cap, lo - r, c64::new(0.0, -1.0));
            }
            Variant::Cor32Box | Variant::Cor32BoxImproved => {
                let b = self.box_bounds();
                push(re_cap, b.im_max, c64::new(0.0, 1.0));
                push(b.re_min, b.im_max, unit(-1.0, 1.0));
                push(b.re_min, b.im_min, unit(-1.0, -1.0));
                push(re_cap, b.im_min, c64::new(0.0, -1.0));
            }
        }
        pts.dedup_by(|next, prev| next.z == prev.z);
        Ok(pts)
    }

    /// Membership of many points, in input order.
    pub fn contains_many(&self, points: &[c64], exec: crate::exec::Execution) -> Vec<bool> {
        exec.map(points, |&z| self.contains(z))
    }
}
