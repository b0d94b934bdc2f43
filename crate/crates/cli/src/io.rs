//! Observable JSON files and per-shot CSV data.

use std::path::Path;

use serde::{Deserialize, Serialize};

use numrange::{CMatrix, DimensionProfile, HermitianMatrix, ObservableSet, C64};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub re: Vec<Vec<f64>>,
    /// Imaginary part; omitted means real.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixEntry {
    pub fn from_matrix(m: &HermitianMatrix) -> Self {
        let n = m.dim();
        let part = |f: fn(C64) -> f64| (0..n).map(|i| (0..n).map(|j| f(m.get(i, j))).collect()).collect();
        let im: Vec<Vec<f64>> = part(|z| z.im);
        Self {
            re: part(|z| z.re),
            im: im.iter().flatten().any(|&x| x != 0.0).then_some(im),
        }
    }

    pub fn to_matrix(&self, dim: usize) -> CliResult<HermitianMatrix> {
        let bad = |what: &str| CliError::Io(format!("matrix {what}; expected {dim}×{dim}"));
        if self.re.len() != dim || self.re.iter().any(|r| r.len() != dim) {
            return Err(bad("real part has the wrong shape"));
        }
        if let Some(im) = &self.im {
            if im.len() != dim || im.iter().any(|r| r.len() != dim) {
                return Err(bad("imaginary part has the wrong shape"));
            }
        }
        let rows: Vec<Vec<C64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| C64::new(self.re[i][j], self.im.as_ref().map_or(0.0, |im| im[i][j])))
                    .collect()
            })
            .collect();
        let m = CMatrix::from_rows(&rows).map_err(|e| CliError::Io(e.to_string()))?;
        HermitianMatrix::new(m).map_err(|e| CliError::Io(format!("observable is not Hermitian: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableFile {
    pub dims: Vec<usize>,
    pub observables: Vec<MatrixEntry>,
}

impl ObservableFile {
    pub fn from_set(obs: &ObservableSet) -> Self {
        Self {
            dims: obs.profile().local_dims().to_vec(),
            observables: obs.observables().iter().map(MatrixEntry::from_matrix).collect(),
        }
    }

    pub fn to_set(&self) -> CliResult<ObservableSet> {
        let profile = DimensionProfile::new(self.dims.clone()).map_err(|e| CliError::Io(e.to_string()))?;
        let dim = profile.total_dim();
        let mats = self
            .observables
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_matrix(dim).map_err(|e| CliError::Io(format!("observable {i}: {e}"))))
            .collect::<CliResult<Vec<_>>>()?;
        if mats.is_empty() {
            return Err(CliError::Io("file lists no observables".into()));
        }
        ObservableSet::new(profile, mats).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

pub fn load_observables(path: &Path) -> CliResult<ObservableSet> {
    ObservableFile::load(path)?.to_set()
}

/// Reads one column per observable, one row per shot. A non-numeric first
/// row is taken as a header.
pub fn load_shots(path: &Path, k: usize) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut columns = vec![Vec::new(); k];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != k {
            return Err(CliError::Io(format!(
                "{}: row {} has {} columns, expected {k}",
                path.display(),
                row + 1,
                record.len()
            )));
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(values) => {
                for (c, v) in columns.iter_mut().zip(values) {
                    c.push(v);
                }
            }
            Err(_) if row == 0 => continue,
            Err(e) => return Err(CliError::Io(format!("{}: row {}: {e}", path.display(), row + 1))),
        }
    }
    if columns[0].is_empty() {
        return Err(CliError::Io(format!("{}: no shots", path.display())));
    }
    Ok(columns)
}

pub fn write_shots(columns: &[Vec<f64>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record((0..columns.len()).map(|j| format!("obs{j}")))?;
    for i in 0..columns.first().map_or(0, Vec::len) {
        w.write_record(columns.iter().map(|c| c[i].to_string()))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
        .map_err(|e| CliError::Io(e.to_string()))
}
