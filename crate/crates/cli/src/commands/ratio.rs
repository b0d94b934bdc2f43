use std::path::Path;

use serde::Serialize;

use numrange::rangegeom::hull_2d;
use numrange::septools::{SeesawConfig, SepOracle};
use numrange::{volume_ratio, BodyApprox, ObservableSet, RatioConfig, RatioReport};

use crate::error::CliResult;
use crate::io::load_observables;
use crate::report::{csv_table, Meta, Report};
use crate::svg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioParams {
    pub directions: usize,
    pub mc_samples: usize,
    pub grid: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for RatioParams {
    fn default() -> Self {
        Self {
            directions: 720,
            mc_samples: 200_000,
            grid: 32,
            restarts: 64,
            seed: 0,
        }
    }
}

impl RatioParams {
    pub fn config(&self) -> RatioConfig {
        RatioConfig {
            directions: self.directions,
            mc_samples: self.mc_samples,
            seed: self.seed,
            sep: SepOracle {
                seesaw: SeesawConfig {
                    restarts: self.restarts,
                    ..SeesawConfig::default()
                },
                grid_per_axis: self.grid,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioOutput {
    pub meta: Meta,
    pub certified_directions: usize,
    #[serde(flatten)]
    pub report: RatioReport,
    #[serde(skip)]
    boundaries: Option<[Vec<[f64; 2]>; 2]>,
}

#[derive(Serialize)]
struct SummaryRow {
    k_input: usize,
    k: usize,
    dropped: usize,
    directions: usize,
    certified_directions: usize,
    sep_lower: f64,
    sep_upper: f64,
    all_lower: f64,
    all_upper: f64,
    ratio_lower: f64,
    ratio_upper: f64,
    ratio_estimate: f64,
}

fn outline(body: &BodyApprox) -> Vec<[f64; 2]> {
    hull_2d(&body.inner_vertices().iter().map(|v| [v[0], v[1]]).collect::<Vec<_>>())
}

pub fn run_ratio(obs: &ObservableSet, p: &RatioParams) -> CliResult<RatioOutput> {
    let run = volume_ratio(obs, &p.config())?;
    let boundaries = (run.report.k == 2).then(|| [outline(&run.all_body), outline(&run.sep_body)]);
    Ok(RatioOutput {
        meta: Meta::new("ratio", p.seed)
            .with("directions", p.directions)
            .with("mc_samples", p.mc_samples)
            .with("sep_grid", p.grid)
            .with("restarts", p.restarts),
        certified_directions: run.report.sep_certified.iter().filter(|&&c| c).count(),
        report: run.report,
        boundaries,
    })
}

pub fn cmd_ratio(path: &Path, p: &RatioParams) -> CliResult<RatioOutput> {
    run_ratio(&load_observables(path)?, p)
}

impl Report for RatioOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        let r = &self.report;
        csv_table(
            &self.meta,
            &[SummaryRow {
                k_input: r.k_input,
                k: r.k,
                dropped: r.reduction.dropped.len(),
                directions: r.directions,
                certified_directions: self.certified_directions,
                sep_lower: r.sep.lower,
                sep_upper: r.sep.upper,
                all_lower: r.all.lower,
                all_upper: r.all.upper,
                ratio_lower: r.ratio.lower,
                ratio_upper: r.ratio.upper,
                ratio_estimate: r.ratio.estimate,
            }],
        )
    }

    fn text(&self) -> CliResult<String> {
        let r = &self.report;
        let mut s = format!("observables: {} given, {} independent\n", r.k_input, r.k);
        for d in &r.reduction.dropped {
            s.push_str(&format!(
                "  dropped #{}: {:?} on kept observables, {} times identity\n",
                d.index, d.coefficients, d.identity_coefficient
            ));
        }
        s.push_str(&format!(
            "directions: {} ({} certified)\nvol SEP ∈ [{:.6}, {:.6}]\nvol ALL ∈ [{:.6}, {:.6}]\nratio ∈ [{:.6}, {:.6}], estimate {:.6}\n",
            r.directions,
            self.certified_directions,
            r.sep.lower,
            r.sep.upper,
            r.all.lower,
            r.all.upper,
            r.ratio.lower,
            r.ratio.upper,
            r.ratio.estimate
        ));
        Ok(s)
    }

    fn svg(&self) -> Option<String> {
        let [all, sep] = self.boundaries.clone()?;
        Some(svg::polygons(
            "joint (ALL) and separable (SEP) numerical ranges",
            &[("ALL", "steelblue", all), ("SEP", "darkorange", sep)],
        ))
    }
}
