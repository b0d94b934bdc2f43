use serde::{Deserialize, Serialize};

use super::certified::certified_sep_support_2qubit;
use super::seesaw::{seesaw_product_extremum, SeesawConfig, Sense};
use crate::error::Result;
use crate::qlinalg::ObservableSet;
use crate::rangegeom::{Achiever, Direction, SupportOracle, SupportSample};
use crate::rng::seed_from_reals;

/// Support function of the separable numerical range.
///
/// Two-qubit profiles get a certified upper bound from the sphere grid;
/// other profiles return the seesaw value, flagged uncertified. The support
/// point is always the expectation vector of an explicit product state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SepOracle {
    pub seesaw: SeesawConfig,
    pub grid_per_axis: usize,
}

impl Default for SepOracle {
    fn default() -> Self {
        Self {
            seesaw: SeesawConfig::default(),
            grid_per_axis: 32,
        }
    }
}

impl SupportOracle for SepOracle {
    fn support(&self, obs: &ObservableSet, u: &Direction) -> Result<SupportSample> {
        sep_support_oracle(obs, u, self)
    }
}

pub fn sep_support_oracle(obs: &ObservableSet, u: &Direction, cfg: &SepOracle) -> Result<SupportSample> {
    let x = obs.combination(u.components())?;
    let (value, state, certified) = if obs.profile().is_two_qubit() {
        let b = certified_sep_support_2qubit(&x, cfg.grid_per_axis)?;
        (b.certified_upper, b.achiever, true)
    } else {
        let seed = seed_from_reals(cfg.seesaw.seed, u.components());
        let r = seesaw_product_extremum(&x, obs.profile(), Sense::Max, &cfg.seesaw.with_seed(seed))?;
        (r.value, r.state, false)
    };
    Ok(SupportSample {
        direction: u.clone(),
        support_value: value,
        support_point: obs.expectations(&state.to_vector()),
        achiever: Achiever::Product(state),
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{pauli_block_pair, ProductAngles};
    use crate::rangegeom::{direction_grid, support_all};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn bloch_block_radius_half() {
        let obs = pauli_block_pair();
        for u in direction_grid(2, 7).unwrap() {
            let s = sep_support_oracle(&obs, &u, &SepOracle::default()).unwrap();
            assert!(s.certified);
            assert!((u.dot(&s.support_point) - 0.5).abs() < 1e-9);
            assert!(s.support_value >= 0.5 && s.support_value < 0.51);
        }
    }

    #[test]
    fn xx_zz_directions() {
        let obs = ProductAngles::new(FRAC_PI_2, FRAC_PI_2).unwrap().observables();
        let cfg = SepOracle::default();
        let s = sep_support_oracle(&obs, &Direction::new(vec![1.0, 0.0]).unwrap(), &cfg).unwrap();
        assert!((s.support_value - 1.0).abs() < 1e-12);
        let s = sep_support_oracle(&obs, &Direction::new(vec![1.0, 1.0]).unwrap(), &cfg).unwrap();
        assert!((u_dot(&s) - FRAC_1_SQRT_2).abs() < 1e-9);
        assert!(s.support_value - FRAC_1_SQRT_2 < 5e-3);
    }

    fn u_dot(s: &SupportSample) -> f64 {
        s.direction.dot(&s.support_point)
    }

    #[test]
    fn sep_below_all() {
        let obs = crate::analytic::pauli_block_triple();
        for u in direction_grid(3, 40).unwrap() {
            let s = sep_support_oracle(&obs, &u, &SepOracle::default()).unwrap();
            let a = support_all(&obs, &u).unwrap();
            assert!(s.support_value <= a.support_value + 1e-9);
        }
    }

    #[test]
    fn qutrit_uncertified() {
        let mut rng = crate::rng::task_rng(2, 0);
        let a = crate::qlinalg::random::random_hermitian(9, &mut rng);
        let obs = ObservableSet::new(crate::qlinalg::DimensionProfile::bipartite(3), vec![a]).unwrap();
        let cfg = SepOracle {
            seesaw: SeesawConfig { restarts: 8, ..Default::default() },
            ..Default::default()
        };
        let s = sep_support_oracle(&obs, &Direction::new(vec![1.0]).unwrap(), &cfg).unwrap();
        assert!(!s.certified);
        assert!((s.support_value - s.support_point[0]).abs() < 1e-10);
    }
}
