use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use orrsom_core::eigensolver::{filter_spectrum, solve_pencil_with, SolverOptions, Spectrum, SpectrumDocument};
use orrsom_core::enclosure::{
    beta_decomposition, essential_ray, region, verify_spectrum, BoxBounds, EnclosureRegion, Variant, VerifyReport,
};
use orrsom_core::operator::{assemble_pencil, build_grid, export_pencil, Grid, TestFunction};
use orrsom_core::profiles::{profile_bounds, write_profile_csv, FlowProfile, ProfileBounds};
use orrsom_core::{c64, SCHEMA_VERSION};
use serde::Serialize;

use crate::config::{Format, RunConfig};

const BOUNDS_SCAN: usize = 4000;
const PROFILE_POINTS: usize = 2001;
const ARC_POINTS: usize = 64;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(path: &Path, cfg: &RunConfig, body: T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&Envelope { schema: SCHEMA_VERSION, config: cfg, body })?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn write_points(path: &Path, points: impl IntoIterator<Item = c64>) -> anyhow::Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?);
    writeln!(out, "re,im")?;
    for z in points {
        writeln!(out, "{},{}", z.re, z.im)?;
    }
    out.flush()?;
    Ok(())
}

fn prepare(cfg: &RunConfig) -> anyhow::Result<PathBuf> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    write_json(&cfg.out.join("config.json"), cfg, ())?;
    Ok(cfg.out.clone())
}

fn bounds_of(p: &FlowProfile) -> anyhow::Result<ProfileBounds> {
    profile_bounds(p, BOUNDS_SCAN).context("computing profile bounds")
}

pub fn profile(cfg: &RunConfig) -> anyhow::Result<()> {
    let out = prepare(cfg)?;
    let p = cfg.profile.load()?;
    let xs: Vec<f64> = (0..PROFILE_POINTS).map(|k| cfg.x_max * k as f64 / (PROFILE_POINTS - 1) as f64).collect();
    write_profile_csv(&out.join("profile.csv"), &p, &xs)?;
    write_json(&out.join("bounds.json"), cfg, bounds_of(&p)?)
}

fn grid(cfg: &RunConfig, n: usize) -> anyhow::Result<Grid> {
    build_grid(cfg.scheme, n, cfg.map_param).with_context(|| format!("building grid with N = {n}"))
}

/// Solves at `N` and `2N` and keeps only eigenvalues confirmed by the finer grid.
pub fn compute_spectrum(cfg: &RunConfig, p: &FlowProfile) -> anyhow::Result<Spectrum> {
    let opts = SolverOptions { residual_tol: cfg.residual_tol, ..SolverOptions::default() };
    let solve = |n: usize| -> anyhow::Result<Spectrum> {
        let pencil = assemble_pencil(p, cfg.a, cfg.r, &grid(cfg, n)?)?;
        solve_pencil_with(&pencil, &opts).with_context(|| format!("eigensolver failed at N = {n}"))
    };
    let coarse = solve(cfg.n)?;
    let fine = solve(2 * cfg.n)?;
    Ok(filter_spectrum(&coarse, &fine, cfg.drift_tol)?)
}

pub fn spectrum(cfg: &RunConfig, export: bool) -> anyhow::Result<()> {
    let out = prepare(cfg)?;
    let p = cfg.profile.load()?;
    if export {
        let pencil = assemble_pencil(&p, cfg.a, cfg.r, &grid(cfg, cfg.n)?)?;
        export_pencil(&pencil, &out, "pencil")?;
    }
    let s = compute_spectrum(cfg, &p)?;
    let kept = s.kept().count();
    if kept == 0 {
        log::warn!("no eigenvalue survived the residual and two-grid filters");
    }
    log::info!("{kept} of {} eigenvalues kept", s.eigenvalues.len());
    write_json(&out.join("spectrum.json"), cfg, SpectrumDocument::from(&s))?;
    if cfg.format == Format::Csv {
        let mut w = std::io::BufWriter::new(fs::File::create(out.join("spectrum.csv"))?);
        writeln!(w, "re,im,residual,kept,drift")?;
        for e in &s.eigenvalues {
            let drift = e.drift.map(|d| d.to_string()).unwrap_or_default();
            writeln!(w, "{},{},{},{},{}", e.lambda.re, e.lambda.im, e.residual, e.kept, drift)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn regions(cfg: &RunConfig, b: &ProfileBounds) -> anyhow::Result<Vec<EnclosureRegion>> {
    cfg.variants
        .iter()
        .map(|&v| region(v, cfg.a, cfg.r, b).with_context(|| format!("region {v}")))
        .collect()
}

#[derive(Serialize)]
struct BoxEntry {
    variant: Variant,
    #[serde(flatten)]
    bounds: BoxBounds,
    radius: f64,
}

#[derive(Serialize)]
struct BoxReport {
    bounds: ProfileBounds,
    ray_base: [f64; 2],
    boxes: Vec<BoxEntry>,
}

pub fn enclosure(cfg: &RunConfig) -> anyhow::Result<()> {
    let out = prepare(cfg)?;
    let p = cfg.profile.load()?;
    let b = bounds_of(&p)?;
    let regs = regions(cfg, &b)?;
    let ray = essential_ray(cfg.a, cfg.r, p.asymptotic_value())?;
    let re_cap = regs.iter().map(|r| r.default_re_cap()).fold(ray.base.re + 10.0, f64::max);
    write_points(&out.join("ray.csv"), ray.polyline(re_cap))?;
    for reg in &regs {
        let pts = reg.boundary(re_cap, ARC_POINTS)?;
        write_points(&out.join(format!("region_{}.csv", reg.variant)), pts.into_iter().map(|p| p.z))?;
    }
    let boxes = regs
        .iter()
        .map(|reg| BoxEntry { variant: reg.variant, bounds: reg.box_bounds(), radius: reg.radius })
        .collect();
    write_json(&out.join("box.json"), cfg, BoxReport { bounds: b, ray_base: [ray.base.re, ray.base.im], boxes })
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub bounds: ProfileBounds,
    pub kept: usize,
    pub all_inside: bool,
    pub reports: Vec<VerifyReport>,
}

fn verify_against(cfg: &RunConfig, p: &FlowProfile, s: &Spectrum) -> anyhow::Result<VerifyDocument> {
    let b = bounds_of(p)?;
    let ray = essential_ray(cfg.a, cfg.r, p.asymptotic_value())?;
    let reports: Vec<VerifyReport> = regions(cfg, &b)?.iter().map(|reg| verify_spectrum(s, reg, &ray, cfg.slack)).collect();
    Ok(VerifyDocument {
        bounds: b,
        kept: s.kept().count(),
        all_inside: reports.iter().all(|r| r.all_inside),
        reports,
    })
}

/// Returns whether every kept eigenvalue lies inside every selected region.
pub fn verify(cfg: &RunConfig, spectrum_file: Option<&Path>) -> anyhow::Result<bool> {
    let out = prepare(cfg)?;
    let p = cfg.profile.load()?;
    let s = match spectrum_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let doc: SpectrumDocument = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            doc.into_spectrum()?
        }
        None => compute_spectrum(cfg, &p)?,
    };
    let doc = verify_against(cfg, &p, &s)?;
    let ok = doc.all_inside;
    write_json(&out.join("verify.json"), cfg, doc)?;
    Ok(ok)
}

#[derive(Serialize)]
struct SweepRecord {
    a: f64,
    #[serde(rename = "R")]
    r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kept: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_inside: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_re: Option<f64>,
    /// `|V'|max / (2a)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    beta3_bound: Option<f64>,
    /// `|β₃|` for `u = x² e^{-x}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    beta3_probe: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<SpectrumDocument>,
}

#[derive(Serialize)]
struct SweepDocument {
    points: Vec<SweepRecord>,
}

fn sweep_point(cfg: &RunConfig, p: &FlowProfile) -> anyhow::Result<SweepRecord> {
    let s = compute_spectrum(cfg, p)?;
    let v = verify_against(cfg, p, &s)?;
    let kept = s.kept_values();
    let g = grid(cfg, cfg.n.max(64))?;
    let beta = beta_decomposition(&g, p, cfg.a, cfg.r, &TestFunction::monomial_exp(2))?;
    Ok(SweepRecord {
        a: cfg.a,
        r: cfg.r,
        error: None,
        kept: Some(kept.len()),
        all_inside: Some(v.all_inside),
        max_im: kept.iter().map(|z| z.im).reduce(f64::max),
        min_re: kept.iter().map(|z| z.re).reduce(f64::min),
        beta3_bound: Some(v.bounds.dv_abs_max / (2.0 * cfg.a)),
        beta3_probe: Some(beta.beta3().norm()),
        eigenvalues: Some(SpectrumDocument::from(&s)),
    })
}

pub fn sweep(cfg: &RunConfig, a_list: &[f64], r_list: &[f64], jobs: Option<usize>) -> anyhow::Result<()> {
    anyhow::ensure!(!a_list.is_empty() && !r_list.is_empty(), "sweep needs nonempty --a-list and --R-list");
    let out = prepare(cfg)?;
    let p = cfg.profile.load()?;
    let points: Vec<(f64, f64)> = a_list.iter().flat_map(|&a| r_list.iter().map(move |&r| (a, r))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().context("building worker pool")?;
    let records: Vec<SweepRecord> = pool.install(|| {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|&(a, r)| {
                let point = cfg.with_point(a, r);
                point.validate().and_then(|_| sweep_point(&point, &p)).unwrap_or_else(|e| {
                    log::warn!("sweep point a = {a}, R = {r} failed: {e:#}");
                    SweepRecord {
                        a,
                        r,
                        error: Some(format!("{e:#}")),
                        kept: None,
                        all_inside: None,
                        max_im: None,
                        min_re: None,
                        beta3_bound: None,
                        beta3_probe: None,
                        eigenvalues: None,
                    }
                })
            })
            .collect()
    });
    write_json(&out.join("sweep.json"), cfg, SweepDocument { points: records })
}
