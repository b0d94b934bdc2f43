use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use numrange::analytic::{
    all_volume_product_2q, minimize_ratio_product_2q, ratio_product_2q, sep_volume_product_2q, ProductAngles,
};
use numrange::septools::{SeesawConfig, SepOracle};
use numrange::{volume_ratio, RatioConfig};

use crate::error::{CliError, CliResult};
use crate::report::{csv_table, opt, text_table, Meta, Report};
use crate::svg;

pub const MIN_SWEEP_GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub grid: usize,
    pub directions: usize,
    pub sep_grid: usize,
    pub seed: u64,
}

impl SweepParams {
    pub fn new(grid: usize, seed: u64) -> Self {
        Self {
            grid,
            directions: 720,
            sep_grid: 32,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta_a: f64,
    pub theta_b: f64,
    pub sep_vol: f64,
    pub all_vol: f64,
    pub ratio_analytic: Option<f64>,
    pub ratio_numeric: Option<f64>,
    pub numeric_lower: Option<f64>,
    pub numeric_upper: Option<f64>,
    pub abs_diff: Option<f64>,
    /// The joint range has no interior here; no ratio is defined.
    pub degenerate: bool,
}

impl SweepRow {
    pub fn bracket_contains_analytic(&self) -> bool {
        match (self.ratio_analytic, self.numeric_lower, self.numeric_upper) {
            (Some(r), Some(lo), Some(hi)) => {
                let slack = 1e-12 * r.abs().max(1.0);
                lo - slack <= r && r <= hi + slack
            }
            _ => true,
        }
    }
}

/// Analytic and numeric volumes of the product pair at one angle pair.
pub fn sweep_point(theta_a: f64, theta_b: f64, directions: usize, sep_grid: usize, seed: u64) -> CliResult<SweepRow> {
    let angles = ProductAngles::new(theta_a, theta_b)?;
    let mut row = SweepRow {
        theta_a,
        theta_b,
        sep_vol: sep_volume_product_2q(&angles),
        all_vol: all_volume_product_2q(&angles),
        ratio_analytic: None,
        ratio_numeric: None,
        numeric_lower: None,
        numeric_upper: None,
        abs_diff: None,
        degenerate: true,
    };
    let Ok(analytic) = ratio_product_2q(&angles) else {
        return Ok(row);
    };
    let cfg = RatioConfig {
        directions,
        mc_samples: 1000,
        seed,
        sep: SepOracle {
            seesaw: SeesawConfig {
                restarts: 8,
                ..SeesawConfig::default()
            },
            grid_per_axis: sep_grid,
        },
    };
    row.ratio_analytic = Some(analytic);
    match volume_ratio(&angles.observables(), &cfg) {
        Ok(run) if run.report.k == 2 => {
            let r = run.report.ratio;
            row.degenerate = false;
            row.ratio_numeric = Some(r.estimate);
            row.numeric_lower = Some(r.lower);
            row.numeric_upper = Some(r.upper);
            row.abs_diff = Some((r.estimate - analytic).abs());
        }
        Ok(_) | Err(numrange::Error::DegenerateBody(_)) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(row)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutput {
    pub meta: Meta,
    pub max_abs_diff: f64,
    pub bracket_failures: usize,
    pub global_min: f64,
    pub global_min_theta_a: f64,
    pub global_min_theta_b: f64,
    pub rows: Vec<SweepRow>,
}

pub fn cmd_product_sweep(p: &SweepParams) -> CliResult<SweepOutput> {
    if p.grid < MIN_SWEEP_GRID {
        return Err(CliError::Unsupported(format!("grid must be at least {MIN_SWEEP_GRID}, got {}", p.grid)));
    }
    let n = p.grid + 1;
    let step = PI / p.grid as f64;
    let rows = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            sweep_point(i as f64 * step, j as f64 * step, p.directions, p.sep_grid, p.seed)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_abs_diff = rows.iter().filter_map(|r| r.abs_diff).fold(0.0, f64::max);
    let bracket_failures = rows.iter().filter(|r| !r.bracket_contains_analytic()).count();
    let (global_min, at) = minimize_ratio_product_2q(p.grid.max(64))?;
    Ok(SweepOutput {
        meta: Meta::new("product-sweep", p.seed)
            .with("grid", p.grid)
            .with("directions", p.directions)
            .with("sep_grid", p.sep_grid)
            .with("min_search_grid", p.grid.max(64)),
        max_abs_diff,
        bracket_failures,
        global_min,
        global_min_theta_a: at.theta_a(),
        global_min_theta_b: at.theta_b(),
        rows,
    })
}

impl Report for SweepOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        csv_table(&self.meta, &self.rows)
    }

    fn text(&self) -> CliResult<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    format!("{:.4}", r.theta_a),
                    format!("{:.4}", r.theta_b),
                    format!("{:.6}", r.sep_vol),
                    format!("{:.6}", r.all_vol),
                    opt(r.ratio_analytic),
                    opt(r.ratio_numeric),
                    opt(r.abs_diff),
                ]
            })
            .collect();
        Ok(text_table(&["theta_a", "theta_b", "sep_vol", "all_vol", "analytic", "numeric", "|diff|"], &rows)
            + &format!(
                "\nmax |analytic - numeric| = {:.3e}\nbrackets missing the analytic value: {}\nglobal minimum {:.6} at ({:.6}, {:.6})\n",
                self.max_abs_diff, self.bracket_failures, self.global_min, self.global_min_theta_a, self.global_min_theta_b
            ))
    }

    fn svg(&self) -> Option<String> {
        let n = (self.rows.len() as f64).sqrt().round() as usize;
        // rows are ordered by θ_A then θ_B; the heatmap puts θ_A on x.
        let values: Vec<Vec<Option<f64>>> =
            (0..n).map(|j| (0..n).map(|i| self.rows[i * n + j].ratio_analytic).collect()).collect();
        Some(svg::heatmap("separable/joint area ratio over (θ_A, θ_B)", &values, [0.0, PI, 0.0, PI]))
    }
}
