//! Quadratic-form decomposition of the Rayleigh quotient
//! `⟨Au,u⟩/⟨Bu,u⟩ = β₁ + iaR(β₂ - β₃)` with
//!
//! - `β₁ = ‖Bu‖² / ⟨Bu,u⟩`,
//! - `β₂ = (⟨Vu',u'⟩ + a²⟨Vu,u⟩) / ⟨Bu,u⟩`,
//! - `β₃ = ⟨V'u,u'⟩ / ⟨Bu,u⟩`.
//!
//! `Bu` and `Au` are applied spectrally; `u` and `u'` are sampled exactly.

use faer::Mat;
use serde::Serialize;

use crate::exec::Execution;
use crate::operator::{diff_ops, inner_product, real_operators, Grid, TestFunction};
use crate::profiles::{FlowProfile, ProfileSample};
use crate::{c64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaDecomposition {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3_re: f64,
    pub beta3_im: f64,
    /// `β₁ + iaR(β₂ - β₃)`, real/imaginary parts.
    pub assembled_re: f64,
    pub assembled_im: f64,
    /// `⟨Au,u⟩/⟨Bu,u⟩` computed directly.
    pub direct_re: f64,
    pub direct_im: f64,
    /// `⟨Bu,u⟩`, real for admissible `u` up to round-off.
    pub energy: f64,
    /// `‖u‖²`.
    pub mass: f64,
}

impl BetaDecomposition {
    pub fn beta3(&self) -> c64 {
        c64::new(self.beta3_re, self.beta3_im)
    }

    pub fn assembled(&self) -> c64 {
        c64::new(self.assembled_re, self.assembled_im)
    }

    pub fn direct(&self) -> c64 {
        c64::new(self.direct_re, self.direct_im)
    }

    /// `|assembled - direct| / (1 + |direct|)`.
    pub fn relative_mismatch(&self) -> f64 {
        (self.assembled() - self.direct()).norm() / (1.0 + self.direct().norm())
    }
}

/// Operators and profile samples shared by many decompositions on one grid.
pub struct BetaContext {
    grid: Grid,
    a: f64,
    r: f64,
    l2: Mat<f64>,
    l4: Mat<f64>,
    samples: Vec<ProfileSample>,
}

fn real_times_complex(m: &Mat<f64>, v: &[c64]) -> Vec<c64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| v[j] * m[(i, j)]).sum()).collect()
}

impl BetaContext {
    pub fn new(g: &Grid, p: &FlowProfile, a: f64, r: f64) -> Result<Self> {
        if !(a > 0.0 && r > 0.0) {
            return Err(Error::InvalidArgument(format!("need a > 0 and R > 0, got a = {a}, R = {r}")));
        }
        let (l2, l4) = real_operators(&diff_ops(g), a);
        let samples = g.nodes.iter().map(|&x| p.try_eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(Self { grid: g.clone(), a, r, l2, l4, samples })
    }

    pub fn decompose(&self, u: &TestFunction) -> Result<BetaDecomposition> {
        let g = &self.grid;
        if !u.is_admissible_on(g.x_max()) {
            return Err(Error::InadmissibleTestFunction(format!("{u:?} does not decay on the grid")));
        }
        let (a, ar) = (self.a, self.a * self.r);
        let u0 = u.samples(&g.nodes, 0);
        let u1 = u.samples(&g.nodes, 1);
        let bu = real_times_complex(&self.l2, &u0);
        let l4u = real_times_complex(&self.l4, &u0);
        let au: Vec<c64> = (0..g.len())
            .map(|k| {
                let s = &self.samples[k];
                l4u[k] + c64::new(0.0, ar) * (bu[k] * s.v + u0[k] * s.d2v)
            })
            .collect();
        let weighted = |f: fn(&ProfileSample) -> f64, v: &[c64]| -> Vec<c64> {
            v.iter().zip(&self.samples).map(|(z, s)| z * f(s)).collect()
        };
        let energy = inner_product(g, &bu, &u0)?;
        if !(energy.norm() > f64::MIN_POSITIVE && energy.re.is_finite()) {
            return Err(Error::InadmissibleTestFunction("⟨Bu,u⟩ vanishes".into()));
        }
        let b1 = inner_product(g, &bu, &bu)? / energy;
        let b2 = (inner_product(g, &weighted(|s| s.v, &u1), &u1)?
            + inner_product(g, &weighted(|s| s.v, &u0), &u0)? * (a * a))
            / energy;
        let b3 = inner_product(g, &weighted(|s| s.dv, &u0), &u1)? / energy;
        let assembled = b1 + c64::new(0.0, ar) * (b2 - b3);
        let direct = inner_product(g, &au, &u0)? / energy;
        Ok(BetaDecomposition {
            beta1: b1.re,
            beta2: b2.re,
            beta3_re: b3.re,
            beta3_im: b3.im,
            assembled_re: assembled.re,
            assembled_im: assembled.im,
            direct_re: direct.re,
            direct_im: direct.im,
            energy: energy.re,
            mass: inner_product(g, &u0, &u0)?.re,
        })
    }

    pub fn decompose_many(&self, us: &[TestFunction], exec: Execution) -> Vec<Result<BetaDecomposition>> {
        exec.map(us, |u| self.decompose(u))
    }
}

/// One-shot convenience wrapper around [`BetaContext`].
pub fn beta_decomposition(g: &Grid, p: &FlowProfile, a: f64, r: f64, u: &TestFunction) -> Result<BetaDecomposition> {
    BetaContext::new(g, p, a, r)?.decompose(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{build_grid, Scheme};

    #[test]
    fn constant_profile_has_unit_beta2_and_no_beta3() {
        let g = build_grid(Scheme::TruncatedChebyshev, 128, 60.0).unwrap();
        let p = FlowProfile::constant(1.0);
        let d = beta_decomposition(&g, &p, 0.5, 100.0, &TestFunction::monomial_exp(2)).unwrap();
        assert!((d.beta2 - 1.0).abs() < 1e-10);
        assert!(d.beta3().norm() < 1e-14);
        assert!(d.beta1 >= 0.25);
        assert!(d.relative_mismatch() < 1e-8);
    }

    #[test]
    fn beta1_matches_closed_form_for_exponential_monomial() {
        let g = build_grid(Scheme::TruncatedChebyshev, 160, 60.0).unwrap();
        let p = FlowProfile::constant(1.0);
        let a = 0.7;
        let d = beta_decomposition(&g, &p, a, 10.0, &TestFunction::monomial_exp(2)).unwrap();
        // ∫ (x²e^{-x})² = 4!/2⁵, ∫ ((2x - x²)e^{-x})² = 4·2!/2³ - 4·3!/2⁴ + 4!/2⁵
        let mass = 24.0 / 32.0;
        let grad = 1.0 - 1.5 + 0.75;
        assert!((d.mass - mass).abs() < 1e-10);
        assert!((d.energy - (grad + a * a * mass)).abs() < 1e-8);
    }

    #[test]
    fn rejects_undecayed_functions() {
        let g = build_grid(Scheme::TruncatedChebyshev, 64, 5.0).unwrap();
        let p = FlowProfile::constant(1.0);
        let u = TestFunction::new(c64::new(1.0, 0.0), 2, 0.1, 0.0, 1.0).unwrap();
        assert!(matches!(beta_decomposition(&g, &p, 0.5, 10.0, &u), Err(Error::InadmissibleTestFunction(_))));
    }
}
