//! Output assembly shared by the commands.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance embedded in every report. Contains no timestamps, so reruns
/// with the same configuration produce identical data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    /// Grid sizes and sample counts, in insertion order.
    #[serde(serialize_with = "pairs_as_map")]
    pub params: Vec<(String, String)>,
}

fn pairs_as_map<S: serde::Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(pairs.iter().map(|(k, v)| (k, v)))
}

impl Meta {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Self {
            tool: "numrange",
            version: VERSION,
            command,
            seed,
            params: Vec::new(),
        }
    }

    pub fn with(mut self, name: &str, value: impl ToString) -> Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    /// `# key=value` lines for CSV preambles.
    pub fn csv_preamble(&self) -> String {
        let mut s = format!(
            "# {} {} command={} seed={}\n",
            self.tool, self.version, self.command, self.seed
        );
        for (k, v) in &self.params {
            s.push_str(&format!("# {k}={v}\n"));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    /// Human-readable tables.
    Text,
}

/// A command result that can be rendered in every output format.
pub trait Report: Serialize {
    fn meta(&self) -> &Meta;

    fn json(&self) -> CliResult<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    fn csv(&self) -> CliResult<String>;

    fn text(&self) -> CliResult<String> {
        self.json()
    }

    fn svg(&self) -> Option<String> {
        None
    }

    fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }
}

/// Serializes rows under the metadata preamble.
pub fn csv_table<R: Serialize>(meta: &Meta, rows: &[R]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(meta.csv_preamble() + &body)
}

/// Writes `<command>.<ext>` and, when available, `<command>-<timestamp>.svg`
/// into `dir`. Returns the written paths.
pub fn write_outputs<R: Report>(report: &R, format: Format, dir: &Path) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let command = report.meta().command;
    let ext = match format {
        Format::Text => "txt",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let data = dir.join(format!("{command}.{ext}"));
    std::fs::write(&data, report.render(format)?)?;
    let mut written = vec![data];
    if let Some(svg) = report.svg() {
        let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S");
        let path = dir.join(format!("{command}-{stamp}.svg"));
        std::fs::write(&path, svg)?;
        written.push(path);
    }
    Ok(written)
}

/// Fixed-width text table.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
            + "\n"
    };
    let mut s = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        s.push_str(&line(r.clone()));
    }
    s
}

pub fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.6}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preamble_and_table() {
        let m = Meta::new("goe", 7).with("samples", 10);
        assert_eq!(m.csv_preamble(), format!("# numrange {VERSION} command=goe seed=7\n# samples=10\n"));
        let t = text_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
