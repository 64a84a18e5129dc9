//! JSON form of a spectrum:
//! `{"schema":1,"a":…,"R":…,"N":…,"X_max":…,"eigenvalues":[{"re","im","residual","kept","drift"}]}`.

use serde::{Deserialize, Serialize};

use super::{Eigenvalue, SolverPath, Spectrum};
use crate::{c64, Error, Result, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub kept: bool,
    pub drift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema: u32,
    pub a: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "X_max")]
    pub x_max: Option<f64>,
    pub eigenvalues: Vec<EigenvalueRecord>,
}

impl From<&Spectrum> for SpectrumDocument {
    fn from(s: &Spectrum) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            a: s.wave_number,
            r: s.reynolds,
            n: s.resolution,
            // ∞ (algebraic map) has no JSON number
            x_max: s.x_max.filter(|x| x.is_finite()),
            eigenvalues: s
                .eigenvalues
                .iter()
                .map(|e| EigenvalueRecord {
                    re: e.lambda.re,
                    im: e.lambda.im,
                    residual: e.residual,
                    kept: e.kept,
                    drift: e.drift,
                })
                .collect(),
        }
    }
}

impl SpectrumDocument {
    /// Rebuilds a spectrum (solver metadata that is not part of the document
    /// is filled with neutral values).
    pub fn into_spectrum(self) -> Result<Spectrum> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!("unsupported spectrum schema {}", self.schema)));
        }
        let mut eigenvalues: Vec<Eigenvalue> = self
            .eigenvalues
            .iter()
            .map(|r| Eigenvalue { lambda: c64::new(r.re, r.im), residual: r.residual, kept: r.kept, drift: r.drift })
            .collect();
        eigenvalues.sort_by(|x, y| x.lambda.re.total_cmp(&y.lambda.re).then(x.lambda.im.total_cmp(&y.lambda.im)));
        Ok(Spectrum {
            dim: eigenvalues.len(),
            eigenvalues,
            resolution: self.n,
            x_max: self.x_max,
            wave_number: self.a,
            reynolds: self.r,
            path: SolverPath::Reduction,
            condition_estimate: f64::NAN,
            infinite_count: 0,
            norm_a: f64::NAN,
            norm_b: f64::NAN,
            residual_tol: f64::NAN,
            magnitude_cutoff: f64::INFINITY,
            drift_tol: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip() {
        let doc = SpectrumDocument {
            schema: 1,
            a: Some(0.179),
            r: Some(580.0),
            n: Some(128),
            x_max: Some(100.0),
            eigenvalues: vec![EigenvalueRecord { re: 0.5, im: 100.0, residual: 1e-12, kept: true, drift: Some(1e-9) }],
        };
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.starts_with(r#"{"schema":1,"a":0.179,"R":580.0,"N":128,"X_max":100.0,"eigenvalues":[{"re""#));
        let back: SpectrumDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let s = back.into_spectrum().unwrap();
        assert_eq!(s.kept_values(), vec![c64::new(0.5, 100.0)]);
        assert_eq!(SpectrumDocument::from(&s).eigenvalues, doc.eigenvalues);
    }
}
