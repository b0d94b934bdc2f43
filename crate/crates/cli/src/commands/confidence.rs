use std::path::Path;

use serde::Serialize;

use numrange::confidence::{find_certificate, rescale_unit_width, CertifyConfig, UnitScaling};
use numrange::qlinalg::eigh;
use numrange::septools::certified_sep_support_2qubit;
use numrange::{Certificate, ConfidenceRect, ObservableSet};

use crate::error::{CliError, CliResult};
use crate::io::{load_observables, load_shots};
use crate::report::{csv_table, Meta, Report};

/// Relative slack when checking outcomes against an observable's spectrum.
const OUTCOME_TOL: f64 = 1e-9;
/// Grid used for the independent re-check of an emitted certificate.
const RECHECK_GRID: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceParams {
    pub alpha: f64,
    /// Custom half widths in unit-scaled coordinates; equal split if absent.
    pub half_widths: Option<Vec<f64>>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfidenceOutput {
    pub meta: Meta,
    pub scalings: Vec<UnitScaling>,
    pub rect: ConfidenceRect,
    pub certificate: Option<Certificate>,
    pub certified: bool,
}

fn check_outcomes(obs: &ObservableSet, columns: &[Vec<f64>]) -> CliResult<()> {
    for (j, (a, col)) in obs.observables().iter().zip(columns).enumerate() {
        let e = eigh(a)?;
        let tol = OUTCOME_TOL * (1.0 + e.max().abs().max(e.min().abs()));
        if let Some(x) = col.iter().find(|&&x| !(x >= e.min() - tol && x <= e.max() + tol)) {
            return Err(CliError::Io(format!(
                "outcome {x} for observable {j} lies outside its spectrum [{}, {}]",
                e.min(),
                e.max()
            )));
        }
    }
    Ok(())
}

/// Builds the Hoeffding rectangle from raw outcomes and searches for a
/// certificate of entanglement.
pub fn run_confidence(obs: &ObservableSet, columns: &[Vec<f64>], p: &ConfidenceParams) -> CliResult<ConfidenceOutput> {
    if !obs.profile().is_two_qubit() {
        return Err(CliError::Unsupported(
            "certification needs certified separable supports, available for two qubits only".into(),
        ));
    }
    if columns.len() != obs.len() {
        return Err(CliError::Io(format!("{} data columns for {} observables", columns.len(), obs.len())));
    }
    check_outcomes(obs, columns)?;
    let (unit, scalings) = rescale_unit_width(obs)?;
    let scaled: Vec<Vec<f64>> = columns
        .iter()
        .zip(&scalings)
        .map(|(c, s)| c.iter().map(|&x| s.apply(x)).collect())
        .collect();
    let rect = match &p.half_widths {
        None => ConfidenceRect::from_unit_samples(&scaled, p.alpha)?,
        Some(t) => {
            let m = scaled[0].len();
            if scaled.iter().any(|c| c.len() != m) {
                return Err(CliError::Io("need equally many shots for every observable".into()));
            }
            let center = scaled.iter().map(|c| c.iter().sum::<f64>() / m as f64).collect();
            ConfidenceRect::new(center, t.clone(), p.alpha, m)?
        }
    };
    let cfg = CertifyConfig {
        seed: p.seed,
        ..CertifyConfig::default()
    };
    let certificate = find_certificate(&unit, &rect, &cfg)?;
    if let Some(c) = &certificate {
        let x = unit.combination(c.direction.components())?;
        let h = certified_sep_support_2qubit(&x, RECHECK_GRID)?.certified_upper;
        if !(c.margin > 0.0 && rect.min_along(c.direction.components()) > h) {
            return Err(CliError::Invariant(format!(
                "certificate failed re-verification: support {h}, rectangle minimum {}",
                c.rect_min_along_direction
            )));
        }
    }
    let mut meta = Meta::new("confidence", p.seed)
        .with("alpha", p.alpha)
        .with("shots", rect.shots_per_observable)
        .with("directions", cfg.directions)
        .with("search_grid", cfg.search_grid)
        .with("verify_grid", cfg.verify_grid);
    if p.half_widths.is_some() {
        meta = meta.with("half_widths", "custom");
    }
    Ok(ConfidenceOutput {
        meta,
        scalings,
        certified: certificate.is_some(),
        certificate,
        rect,
    })
}

pub fn cmd_confidence(obs_path: &Path, data_path: &Path, p: &ConfidenceParams) -> CliResult<ConfidenceOutput> {
    let obs = load_observables(obs_path)?;
    if !obs.profile().is_two_qubit() {
        return Err(CliError::Unsupported(
            "certification needs certified separable supports, available for two qubits only".into(),
        ));
    }
    let columns = load_shots(data_path, obs.len())?;
    run_confidence(&obs, &columns, p)
}

#[derive(Serialize)]
struct Row {
    observable: usize,
    center: f64,
    half_width: f64,
    direction: Option<f64>,
}

impl Report for ConfidenceOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        let rows: Vec<Row> = (0..self.rect.center.len())
            .map(|j| Row {
                observable: j,
                center: self.rect.center[j],
                half_width: self.rect.half_widths[j],
                direction: self.certificate.as_ref().map(|c| c.direction.components()[j]),
            })
            .collect();
        let mut s = csv_table(&self.meta, &rows)?;
        s.push_str(&match &self.certificate {
            Some(c) => format!(
                "# certified=true sep_support={} rect_min={} margin={}\n",
                c.sep_support_certified, c.rect_min_along_direction, c.margin
            ),
            None => "# certified=false\n".into(),
        });
        Ok(s)
    }

    fn text(&self) -> CliResult<String> {
        let mut s = format!(
            "{} shots per observable, alpha = {}\ncenter {:?}\nhalf widths {:?}\n",
            self.rect.shots_per_observable, self.rect.alpha, self.rect.center, self.rect.half_widths
        );
        s.push_str(&match &self.certificate {
            Some(c) => format!(
                "entangled: direction {:?}, separable support ≤ {:.6}, rectangle ≥ {:.6}, margin {:.6}\n",
                c.direction.components(),
                c.sep_support_certified,
                c.rect_min_along_direction,
                c.margin
            ),
            None => "no certificate: the rectangle is not separated from the separable range\n".into(),
        });
        Ok(s)
    }
}
