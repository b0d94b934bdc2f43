use rayon::prelude::*;
use serde::Serialize;

use numrange::qlinalg::sample_goe;
use numrange::rng::{derive_seed, task_rng};
use numrange::septools::{goe_ratio_statistic, SeesawConfig, SepOracle};
use numrange::{volume_ratio, DimensionProfile, ObservableSet, RatioConfig};

use crate::error::{CliError, CliResult};
use crate::report::{csv_table, text_table, Meta, Report};
use crate::svg;

#[derive(Debug, Clone, PartialEq)]
pub struct GoeParams {
    pub d: usize,
    pub ks: Vec<usize>,
    pub samples: usize,
    /// Support directions for k ≥ 2; defaults to 360 (k = 2) and 800 (k = 3).
    pub directions: Option<usize>,
    pub mc_samples: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl GoeParams {
    pub fn new(d: usize, ks: Vec<usize>, samples: usize, seed: u64) -> Self {
        Self {
            d,
            ks,
            samples,
            directions: None,
            mc_samples: 20_000,
            restarts: 64,
            seed,
        }
    }

    fn directions_for(&self, k: usize) -> usize {
        match k {
            1 => 2,
            _ => self.directions.unwrap_or(if k == 2 { 360 } else { 800 }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauRow {
    pub d: usize,
    pub k: usize,
    pub samples: usize,
    pub tau: f64,
    pub stderr: f64,
    /// ⟨λ⊗min/λ_min⟩^k, the value τ would take if the ratio acted per axis.
    pub ratio_power_k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaRow {
    pub d: usize,
    pub samples: usize,
    pub mean_ratio: f64,
    pub stderr_ratio: f64,
    pub mean_abs_lambda_min: f64,
    pub mean_abs_lambda_sep_min: f64,
    /// The two means above multiplied by √(2/D).
    pub scaled_abs_lambda_min: f64,
    pub scaled_abs_lambda_sep_min: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoeOutput {
    pub meta: Meta,
    pub tau: Vec<TauRow>,
    pub lambda: LambdaRow,
}

fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Mean volume ratio over `samples` draws of `k` independent GOE matrices.
pub fn tau_estimate(p: &GoeParams, k: usize) -> CliResult<(f64, f64)> {
    let dim = p.d * p.d;
    let profile = DimensionProfile::bipartite(p.d);
    let stream = derive_seed(p.seed, 100 + k as u64);
    let ratios: Vec<f64> = (0..p.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(stream, i as u64);
            let mats = (0..k).map(|_| sample_goe(dim, &mut rng)).collect();
            let obs = ObservableSet::new(profile.clone(), mats)?;
            let cfg = RatioConfig {
                directions: p.directions_for(k),
                mc_samples: p.mc_samples,
                seed: derive_seed(stream, i as u64),
                sep: SepOracle {
                    seesaw: SeesawConfig {
                        restarts: p.restarts,
                        ..SeesawConfig::default()
                    },
                    grid_per_axis: 32,
                },
            };
            Ok(volume_ratio(&obs, &cfg)?.report.ratio.estimate)
        })
        .collect::<CliResult<_>>()?;
    Ok(mean_stderr(&ratios))
}

pub fn cmd_goe(p: &GoeParams) -> CliResult<GoeOutput> {
    if !(2..=3).contains(&p.d) {
        return Err(CliError::Unsupported(format!("d must be 2 or 3, got {}", p.d)));
    }
    if p.ks.is_empty() || p.ks.iter().any(|k| !(1..=3).contains(k)) {
        return Err(CliError::Unsupported(format!("k values must lie in 1..=3, got {:?}", p.ks)));
    }
    if p.samples < 10 {
        return Err(CliError::Unsupported(format!("need at least 10 samples, got {}", p.samples)));
    }
    let dim = p.d * p.d;
    let seesaw = SeesawConfig {
        restarts: p.restarts,
        ..SeesawConfig::default()
    };
    let stat = goe_ratio_statistic(dim, p.samples, &seesaw, p.seed)?;
    let scale = (2.0 / dim as f64).sqrt();
    let lambda = LambdaRow {
        d: p.d,
        samples: p.samples,
        mean_ratio: stat.mean_ratio,
        stderr_ratio: stat.stderr_ratio,
        mean_abs_lambda_min: stat.mean_abs_lambda_min,
        mean_abs_lambda_sep_min: stat.mean_abs_lambda_sep_min,
        scaled_abs_lambda_min: scale * stat.mean_abs_lambda_min,
        scaled_abs_lambda_sep_min: scale * stat.mean_abs_lambda_sep_min,
    };
    let mut tau = Vec::new();
    for &k in &p.ks {
        let (mean, se) = tau_estimate(p, k)?;
        tau.push(TauRow {
            d: p.d,
            k,
            samples: p.samples,
            tau: mean,
            stderr: se,
            ratio_power_k: stat.mean_ratio.powi(k as i32),
        });
    }
    let mut meta = Meta::new("goe", p.seed)
        .with("d", p.d)
        .with("samples", p.samples)
        .with("mc_samples", p.mc_samples)
        .with("restarts", p.restarts)
        .with("sep_grid", 32);
    for &k in &p.ks {
        meta = meta.with(&format!("directions_k{k}"), p.directions_for(k));
    }
    Ok(GoeOutput { meta, tau, lambda })
}

impl Report for GoeOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        let tau = csv_table(&self.meta, &self.tau)?;
        let lambda = csv_table(&self.meta, &[self.lambda])?;
        Ok(format!("{tau}\n{lambda}"))
    }

    fn text(&self) -> CliResult<String> {
        let rows: Vec<Vec<String>> = self
            .tau
            .iter()
            .map(|r| {
                vec![
                    r.d.to_string(),
                    r.k.to_string(),
                    r.samples.to_string(),
                    format!("{:.4}", r.tau),
                    format!("{:.4}", r.stderr),
                    format!("{:.4}", r.ratio_power_k),
                ]
            })
            .collect();
        let l = &self.lambda;
        Ok(text_table(&["d", "k", "samples", "tau", "stderr", "ratio^k"], &rows)
            + &format!(
                "\n<λ⊗min/λmin> = {:.4} ± {:.4}\n<|λmin|> = {:.4} (×√(2/D): {:.4})\n<|λ⊗min|> = {:.4} (×√(2/D): {:.4})\n",
                l.mean_ratio,
                l.stderr_ratio,
                l.mean_abs_lambda_min,
                l.scaled_abs_lambda_min,
                l.mean_abs_lambda_sep_min,
                l.scaled_abs_lambda_sep_min
            ))
    }

    fn svg(&self) -> Option<String> {
        let pts = |f: fn(&TauRow) -> f64| self.tau.iter().map(|r| [r.k as f64, f(r)]).collect();
        Some(svg::lines(
            "GOE volume ratio against k",
            &[("tau", "steelblue", pts(|r| r.tau)), ("ratio^k", "darkorange", pts(|r| r.ratio_power_k))],
        ))
    }
}
