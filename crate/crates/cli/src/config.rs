use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use orrsom_core::enclosure::Variant;
use orrsom_core::operator::Scheme;
use orrsom_core::profiles::{read_profile_csv, solve_blasius, FlowProfile};
use serde::{Serialize, Serializer};

/// `blasius`, `constant:<c>` or `file:<path>`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Blasius,
    Constant(f64),
    File(PathBuf),
}

impl FromStr for ProfileSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        if s == "blasius" {
            return Ok(ProfileSpec::Blasius);
        }
        if let Some(c) = s.strip_prefix("constant:") {
            let c: f64 = c.parse().with_context(|| format!("bad constant in {s:?}"))?;
            if !c.is_finite() {
                bail!("constant profile value must be finite");
            }
            return Ok(ProfileSpec::Constant(c));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(ProfileSpec::File(path.into()));
        }
        bail!("profile must be blasius, constant:<c> or file:<path>, got {s:?}")
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Blasius => f.write_str("blasius"),
            ProfileSpec::Constant(c) => write!(f, "constant:{c}"),
            ProfileSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl Serialize for ProfileSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl ProfileSpec {
    pub fn load(&self) -> anyhow::Result<FlowProfile> {
        Ok(match self {
            ProfileSpec::Blasius => FlowProfile::blasius(solve_blasius(20.0, 1e-10, 1e-12).context("Blasius shooting failed")?),
            ProfileSpec::Constant(c) => FlowProfile::constant(*c),
            ProfileSpec::File(p) => read_profile_csv(p).with_context(|| format!("reading profile {}", p.display()))?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run; echoed into every JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub profile: ProfileSpec,
    pub a: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub scheme: Scheme,
    /// Truncation length; also the range of `profile.csv`.
    #[serde(rename = "X_max")]
    pub x_max: f64,
    /// `X_max` for truncation, `L` for the algebraic map.
    pub map_param: f64,
    pub residual_tol: f64,
    pub drift_tol: f64,
    pub slack: f64,
    pub variants: Vec<Variant>,
    #[serde(skip)]
    pub out: PathBuf,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("R", self.r),
            ("X_max", self.x_max),
            ("map parameter", self.map_param),
            ("residual tolerance", self.residual_tol),
            ("drift tolerance", self.drift_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                bail!("{name} must be positive and finite, got {v}");
            }
        }
        if !(self.slack >= 0.0 && self.slack.is_finite()) {
            bail!("slack must be non-negative, got {}", self.slack);
        }
        if self.n < orrsom_core::operator::MIN_NODES {
            bail!("N must be at least {}, got {}", orrsom_core::operator::MIN_NODES, self.n);
        }
        if self.n < 16 {
            log::warn!("N = {} is very coarse; the kept spectrum may be empty", self.n);
        }
        Ok(())
    }

    pub fn with_point(&self, a: f64, r: f64) -> Self {
        Self { a, r, ..self.clone() }
    }
}
