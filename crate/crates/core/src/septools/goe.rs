use rayon::prelude::*;
use serde::Serialize;

use super::seesaw::{seesaw_product_extremum, SeesawConfig, Sense};
use crate::error::{Error, Result};
use crate::qlinalg::{lambda_min, sample_goe, DimensionProfile, HermitianMatrix};
use crate::rng::{derive_seed, task_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoeStatistic {
    pub dim: usize,
    pub samples: usize,
    /// Mean of λ⊗min/λ_min.
    pub mean_ratio: f64,
    pub stderr_ratio: f64,
    pub mean_abs_lambda_min: f64,
    pub mean_abs_lambda_sep_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoeSample {
    pub lambda_min: f64,
    pub lambda_sep_min: f64,
    pub ratio: f64,
}

/// λ_min, seesaw λ⊗min and their ratio for one matrix.
pub fn goe_sample_ratio(x: &HermitianMatrix, profile: &DimensionProfile, cfg: &SeesawConfig) -> Result<GoeSample> {
    let lambda_min = lambda_min(x)?;
    let lambda_sep_min = seesaw_product_extremum(x, profile, Sense::Min, cfg)?.value;
    Ok(GoeSample {
        lambda_min,
        lambda_sep_min,
        ratio: lambda_sep_min / lambda_min,
    })
}

/// Averages over `samples` GOE draws of dimension `dim = d²` viewed as
/// d × d. Sample `i` uses stream `i` of `seed`.
pub fn goe_ratio_statistic(dim: usize, samples: usize, cfg: &SeesawConfig, seed: u64) -> Result<GoeStatistic> {
    let d = (dim as f64).sqrt().round() as usize;
    if d < 2 || d * d != dim {
        return Err(Error::Domain(format!("{dim} is not a square d² with d ≥ 2")));
    }
    if samples < 2 {
        return Err(Error::Config("need at least two samples".into()));
    }
    let profile = DimensionProfile::bipartite(d);
    let draws: Vec<GoeSample> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x = sample_goe(dim, &mut task_rng(seed, i as u64));
            goe_sample_ratio(&x, &profile, &cfg.with_seed(derive_seed(seed, i as u64)))
        })
        .collect::<Result<_>>()?;
    let n = samples as f64;
    let mean = |f: &dyn Fn(&GoeSample) -> f64| draws.iter().map(f).sum::<f64>() / n;
    let mean_ratio = mean(&|s| s.ratio);
    let var = draws.iter().map(|s| (s.ratio - mean_ratio).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(GoeStatistic {
        dim,
        samples,
        mean_ratio,
        stderr_ratio: (var / n).sqrt(),
        mean_abs_lambda_min: mean(&|s| s.lambda_min.abs()),
        mean_abs_lambda_sep_min: mean(&|s| s.lambda_sep_min.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeesawConfig {
        SeesawConfig { restarts: 16, ..Default::default() }
    }

    #[test]
    fn ratio_in_unit_interval_and_scale_free() {
        let prof = DimensionProfile::qubits(2);
        for i in 0..20 {
            let x = sample_goe(4, &mut task_rng(9, i));
            let s = goe_sample_ratio(&x, &prof, &cfg()).unwrap();
            assert!(s.ratio > 0.0 && s.ratio <= 1.0 + 1e-12);
            let t = goe_sample_ratio(&x.scale(3.7), &prof, &cfg()).unwrap();
            assert!((s.ratio - t.ratio).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_and_validated() {
        let a = goe_ratio_statistic(4, 20, &cfg(), 1).unwrap();
        let b = goe_ratio_statistic(4, 20, &cfg(), 1).unwrap();
        assert_eq!(a, b);
        assert!(goe_ratio_statistic(5, 20, &cfg(), 1).is_err());
        assert!(goe_ratio_statistic(1, 20, &cfg(), 1).is_err());
    }
}
