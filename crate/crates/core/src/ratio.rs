//! End-to-end volume ratio of the separable to the full joint numerical
//! range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qlinalg::ObservableSet;
use crate::rangegeom::{
    build_body, ratio_bracket, reduce_observables, volume_bracket, AllStatesOracle, BodyApprox,
    RatioBracket, ReductionReport, VolumeBracket,
};
use crate::rng::derive_seed;
use crate::septools::SepOracle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioConfig {
    pub directions: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub sep: SepOracle,
}

impl Default for RatioConfig {
    fn default() -> Self {
        Self {
            directions: 720,
            mc_samples: 200_000,
            seed: 0,
            sep: SepOracle::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub k_input: usize,
    pub k: usize,
    pub reduction: ReductionReport,
    /// Support directions queried per body (grid plus axes).
    pub directions: usize,
    pub sep: VolumeBracket,
    pub all: VolumeBracket,
    pub ratio: RatioBracket,
    /// Per-direction flag: was the separable support value certified.
    pub sep_certified: Vec<bool>,
}

impl RatioReport {
    pub fn fully_certified(&self) -> bool {
        self.sep_certified.iter().all(|&c| c)
    }
}

#[derive(Debug, Clone)]
pub struct RatioRun {
    pub report: RatioReport,
    pub reduced: ObservableSet,
    pub sep_body: BodyApprox,
    pub all_body: BodyApprox,
}

/// Reduces the observables, builds both bodies and brackets their volume
/// ratio.
pub fn volume_ratio(obs: &ObservableSet, cfg: &RatioConfig) -> Result<RatioRun> {
    let (reduced, reduction) = reduce_observables(obs)?;
    let k = reduced.len();
    if k == 0 {
        return Err(Error::DegenerateBody("every observable is a multiple of the identity".into()));
    }
    if k > 3 {
        return Err(Error::UnsupportedDimension(format!(
            "volumes are computed for k ≤ 3 independent observables, got {k}"
        )));
    }
    let sep_oracle = SepOracle {
        seesaw: cfg.sep.seesaw.with_seed(cfg.seed),
        ..cfg.sep
    };
    let all_body = build_body(&reduced, &AllStatesOracle, cfg.directions)?;
    let sep_body = build_body(&reduced, &sep_oracle, cfg.directions)?;
    let all = volume_bracket(&all_body, cfg.mc_samples, derive_seed(cfg.seed, 1))?;
    let sep = volume_bracket(&sep_body, cfg.mc_samples, derive_seed(cfg.seed, 2))?;
    let ratio = ratio_bracket(&sep, &all)?;
    let report = RatioReport {
        k_input: obs.len(),
        k,
        reduction,
        directions: sep_body.outer_halfspaces().len(),
        sep,
        all,
        ratio,
        sep_certified: sep_body.outer_halfspaces().iter().map(|h| h.certified).collect(),
    };
    Ok(RatioRun {
        report,
        reduced,
        sep_body,
        all_body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{bell_projector, pauli_block_pair};
    use crate::qlinalg::DimensionProfile;

    fn quick() -> RatioConfig {
        RatioConfig {
            directions: 180,
            mc_samples: 1000,
            ..Default::default()
        }
    }

    #[test]
    fn bell_interval() {
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![bell_projector()]).unwrap();
        let r = volume_ratio(&obs, &quick()).unwrap().report;
        assert!((r.ratio.estimate - 0.5).abs() < 1e-9, "{r:?}");
        assert!(r.ratio.contains(0.5), "{r:?}");
        assert!(r.fully_certified());
    }

    #[test]
    fn disc_in_disc() {
        let r = volume_ratio(&pauli_block_pair(), &quick()).unwrap().report;
        assert!((r.ratio.estimate - 0.25).abs() < 0.01);
        assert!(r.ratio.contains(0.25), "{:?}", r.ratio);
    }

    #[test]
    fn duplicate_is_dropped() {
        let p = pauli_block_pair();
        let mut v = p.observables().to_vec();
        v.push(v[0].scale(-3.0));
        let obs = ObservableSet::new(p.profile().clone(), v).unwrap();
        let r = volume_ratio(&obs, &quick()).unwrap().report;
        assert_eq!((r.k_input, r.k), (3, 2));
        assert_eq!(r.reduction.dropped[0].index, 2);
    }

    #[test]
    fn too_many_observables() {
        assert!(matches!(
            volume_ratio(&crate::analytic::xx_xy_zz_yz(), &quick()),
            Err(Error::UnsupportedDimension(_))
        ));
    }
}
