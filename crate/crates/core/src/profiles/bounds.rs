//! Bound constants `V_min ≤ V ≤ V_max`, `|V'| ≤ |V'|_max`,
//! `V''_min ≤ V'' ≤ V''_max` on `[0, ∞)`.
//!
//! Bounds of sampled profiles are heuristic: a dense mapped scan, golden
//! section refinement of each extremum, then an outward margin. The margin
//! never moves a bound across zero, so sign information (`V'' ≤ 0` for
//! Blasius) survives widening.

use serde::{Deserialize, Serialize};

use super::{FlowProfile, ProfileKind, ProfileSample};
use crate::{Error, Result};

pub const DEFAULT_BOUND_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileBounds {
    pub v_min: f64,
    pub v_max: f64,
    pub dv_abs_max: f64,
    pub d2v_min: f64,
    pub d2v_max: f64,
    pub c: f64,
}

impl ProfileBounds {
    /// Whether the sample lies inside the bounds up to `tol`.
    pub fn admits(&self, s: &ProfileSample, tol: f64) -> bool {
        s.v >= self.v_min - tol
            && s.v <= self.v_max + tol
            && s.dv.abs() <= self.dv_abs_max + tol
            && s.d2v >= self.d2v_min - tol
            && s.d2v <= self.d2v_max + tol
    }

    /// `V'' ≤ 0` everywhere (hypothesis of the half-disc enclosure).
    pub fn concave(&self) -> bool {
        self.d2v_max <= 0.0
    }
}

pub fn profile_bounds(p: &FlowProfile, n_scan: usize) -> Result<ProfileBounds> {
    profile_bounds_with_margin(p, n_scan, DEFAULT_BOUND_MARGIN)
}

pub fn profile_bounds_with_margin(p: &FlowProfile, n_scan: usize, margin: f64) -> Result<ProfileBounds> {
    if n_scan < 100 {
        return Err(Error::InvalidArgument(format!("n_scan must be >= 100, got {n_scan}")));
    }
    let c = p.asymptotic_value();
    if p.kind() == ProfileKind::Constant {
        return Ok(ProfileBounds { v_min: c, v_max: c, dv_abs_max: 0.0, d2v_min: 0.0, d2v_max: 0.0, c });
    }

    // x = L t / (1 - t) puts half of the scan in [0, L].
    let scale = p.support_end().map_or(5.0, |end| 0.25 * end);
    let mut xs: Vec<f64> = (0..n_scan).map(|k| {
        let t = k as f64 / n_scan as f64;
        scale * t / (1.0 - t)
    }).collect();
    if let Some(end) = p.support_end() {
        xs.push(end);
    }
    if let Some(nodes) = p.table_nodes() {
        xs.extend(nodes);
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let samples = xs.iter().map(|&x| p.try_eval(x)).collect::<Result<Vec<_>>>()?;
    let asymptote = ProfileSample::new(c, 0.0, 0.0);

    // The margin only covers interior extrema located by search; a bound
    // attained at x = 0 or at the asymptote is exact.
    let extreme = |g: &dyn Fn(&ProfileSample) -> f64| -> f64 {
        let (k, sampled) = samples
            .iter()
            .map(g)
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        let lo = xs[k.saturating_sub(1)];
        let hi = xs[(k + 1).min(xs.len() - 1)];
        let refined = if hi > lo { sampled.max(golden_max(|x| g(&p.eval(x)), lo, hi)) } else { sampled };
        let at_infinity = g(&asymptote);
        if at_infinity >= refined || (k == 0 && refined == sampled) {
            at_infinity.max(refined)
        } else {
            widen_up(refined, margin)
        }
    };

    Ok(ProfileBounds {
        v_min: -extreme(&|s| -s.v),
        v_max: extreme(&|s| s.v),
        dv_abs_max: extreme(&|s| s.dv.abs()),
        d2v_min: -extreme(&|s| -s.d2v),
        d2v_max: extreme(&|s| s.d2v),
        c,
    })
}

/// Adds `margin` without crossing zero from below, so sign information
/// (e.g. `V'' ≤ 0`) survives the widening.
fn widen_up(raw: f64, margin: f64) -> f64 {
    let w = raw + margin;
    if raw <= 0.0 && w > 0.0 {
        0.0
    } else {
        w
    }
}

/// Golden-section search for the maximum of `g` on `[lo, hi]`.
fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..80 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        }
    }
    g1.max(g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_bounds_are_exact() {
        let b = profile_bounds(&FlowProfile::constant(1.0), 100).unwrap();
        assert_eq!(b, ProfileBounds { v_min: 1.0, v_max: 1.0, dv_abs_max: 0.0, d2v_min: 0.0, d2v_max: 0.0, c: 1.0 });
    }

    #[test]
    fn scan_is_too_coarse() {
        assert!(profile_bounds(&FlowProfile::constant(1.0), 10).is_err());
    }

    #[test]
    fn interior_extremum_is_refined() {
        // V = x e^{-x}: max 1/e at x = 1, V' = (1-x)e^{-x}, V'' = (x-2)e^{-x}.
        let p = FlowProfile::analytic(0.0, |x| {
            let e = (-x).exp();
            ProfileSample::new(x * e, (1.0 - x) * e, (x - 2.0) * e)
        });
        let b = profile_bounds_with_margin(&p, 100, 0.0).unwrap();
        assert!((b.v_max - (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(b.v_min, 0.0);
        assert!((b.dv_abs_max - 1.0).abs() < 1e-12);
        assert!((b.d2v_min + 2.0).abs() < 1e-12);
        // V'' max e^{-3} at x = 3
        assert!((b.d2v_max - (-3.0f64).exp()).abs() < 1e-10);
        assert!(!b.concave());
    }

    #[test]
    fn widening_keeps_signs() {
        assert_eq!(widen_up(0.0, 1e-6), 0.0);
        assert_eq!(widen_up(-1e-9, 1e-6), 0.0);
        assert_eq!(widen_up(1.0, 1e-6), 1.0 + 1e-6);
    }
}
