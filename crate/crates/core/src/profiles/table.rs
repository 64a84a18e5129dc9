//! Tabulated profiles and their CSV/JSON file format.

use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ProfileSample;
use crate::{Error, Result};

/// One CSV row `x,V,dV,d2V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub x: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "dV")]
    pub dv: f64,
    #[serde(rename = "d2V")]
    pub d2v: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    c: f64,
}

pub(super) struct Table {
    x: Vec<f64>,
    v: Vec<f64>,
    dv: Vec<f64>,
    d2v: Vec<f64>,
}

impl Table {
    pub(super) fn new(rows: &[TableRow]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        if rows[0].x != 0.0 {
            return Err(Error::NonMonotoneAbscissae { index: 0 });
        }
        if let Some(i) = rows.windows(2).position(|w| !(w[1].x > w[0].x)) {
            return Err(Error::NonMonotoneAbscissae { index: i + 1 });
        }
        Ok(Self {
            x: rows.iter().map(|r| r.x).collect(),
            v: rows.iter().map(|r| r.v).collect(),
            dv: rows.iter().map(|r| r.dv).collect(),
            d2v: rows.iter().map(|r| r.d2v).collect(),
        })
    }

    pub(super) fn x_last(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub(super) fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub(super) fn eval(&self, x: f64, c: f64) -> ProfileSample {
        let last = self.x.len() - 1;
        if x > self.x[last] {
            return ProfileSample::new(c, 0.0, 0.0);
        }
        // first node strictly greater than x, so x[k] <= x < x[k+1]
        let k = self.x.partition_point(|&xi| xi <= x).saturating_sub(1);
        if x == self.x[k] || k == last {
            return ProfileSample::new(self.v[k], self.dv[k], self.d2v[k]);
        }
        let h = self.x[k + 1] - self.x[k];
        let t = (x - self.x[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let v = h00 * self.v[k] + h10 * h * self.dv[k] + h01 * self.v[k + 1] + h11 * h * self.dv[k + 1];
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        let dv = d00 * self.v[k] + d10 * self.dv[k] + d01 * self.v[k + 1] + d11 * self.dv[k + 1];
        let d2v = (1.0 - t) * self.d2v[k] + t * self.d2v[k + 1];
        ProfileSample::new(v, dv, d2v)
    }
}

/// Sidecar path: same stem, `.json` extension.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes `x,V,dV,d2V` rows and the `{"c": …}` sidecar next to them.
pub fn write_table_csv(path: &Path, rows: &[TableRow], c: f64) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    let sidecar = File::create(sidecar_path(path))?;
    serde_json::to_writer(sidecar, &Sidecar { c })?;
    Ok(())
}

/// Reads a table and its sidecar; returns rows and `c`.
pub fn read_table_csv(path: &Path) -> Result<(Vec<TableRow>, f64)> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<Result<Vec<TableRow>, _>>()?;
    let sidecar: Sidecar = serde_json::from_reader(File::open(sidecar_path(path))?)?;
    Ok((rows, sidecar.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::FlowProfile;

    fn row(x: f64, v: f64, dv: f64, d2v: f64) -> TableRow {
        TableRow { x, v, dv, d2v }
    }

    #[test]
    fn two_point_table() {
        let p = FlowProfile::tabulated(&[row(0.0, 0.0, 1.0, 0.0), row(1.0, 1.0, 0.0, 0.0)], 1.0).unwrap();
        assert_eq!(p.eval(1.0), ProfileSample::new(1.0, 0.0, 0.0));
        assert_eq!(p.eval(0.0), ProfileSample::new(0.0, 1.0, 0.0));
        assert_eq!(p.eval(7.0), ProfileSample::new(1.0, 0.0, 0.0));
        let mid = p.eval(0.5);
        assert!(mid.v > 0.5 && mid.v < 1.0);
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let f = |x: f64| (x * x * x - 2.0 * x, 3.0 * x * x - 2.0, 6.0 * x);
        let rows: Vec<_> = [0.0, 0.7, 1.5, 2.0]
            .iter()
            .map(|&x| {
                let (v, dv, d2v) = f(x);
                row(x, v, dv, d2v)
            })
            .collect();
        let p = FlowProfile::tabulated(&rows, 0.0).unwrap();
        for &x in &[0.1, 0.33, 1.1, 1.9] {
            let (v, dv, _) = f(x);
            let s = p.eval(x);
            assert!((s.v - v).abs() < 1e-12);
            assert!((s.dv - dv).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(matches!(FlowProfile::tabulated(&[], 1.0), Err(Error::EmptyTable)));
        let bad = [row(0.0, 0.0, 0.0, 0.0), row(2.0, 0.0, 0.0, 0.0), row(1.0, 0.0, 0.0, 0.0)];
        assert!(matches!(FlowProfile::tabulated(&bad, 1.0), Err(Error::NonMonotoneAbscissae { index: 2 })));
        let shifted = [row(0.5, 0.0, 0.0, 0.0)];
        assert!(matches!(FlowProfile::tabulated(&shifted, 1.0), Err(Error::NonMonotoneAbscissae { index: 0 })));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        let rows = vec![row(0.0, 0.0, 0.25, -0.5), row(0.5, 0.1, 0.125, -0.25)];
        write_table_csv(&path, &rows, 0.75).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x,V,dV,d2V\n"));
        let (back, c) = read_table_csv(&path).unwrap();
        assert_eq!(back, rows);
        assert_eq!(c, 0.75);
    }
}
