//! Hoeffding confidence rectangles and entanglement certificates.
//!
//! Observables are first rescaled to unit spectral width. With `m` shots per
//! observable the equal-split rectangle `center ± t` has failure probability
//! at most α. A direction u certifies entanglement when the whole rectangle
//! lies beyond the certified separable support: `u·c − Σ|uⱼ|tⱼ > h_SEP(u)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{hoeffding_bound, hoeffding_half_width};
use crate::error::{Error, Result};
use crate::qlinalg::{eigh, ObservableSet};
use crate::qlinalg::random::random_real_unit;
use crate::rangegeom::{direction_grid, Direction};
use crate::rng::task_rng;
use crate::septools::certified_sep_support_2qubit;

/// Affine map `x ↦ (x − min)/width` taking an observable's spectrum onto
/// [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitScaling {
    pub min: f64,
    pub width: f64,
}

impl UnitScaling {
    pub fn apply(&self, x: f64) -> f64 {
        (x - self.min) / self.width
    }
}

pub fn rescale_unit_width(obs: &ObservableSet) -> Result<(ObservableSet, Vec<UnitScaling>)> {
    let mut scalings = Vec::with_capacity(obs.len());
    let mut mats = Vec::with_capacity(obs.len());
    for (j, a) in obs.observables().iter().enumerate() {
        let e = eigh(a)?;
        let width = e.max() - e.min();
        if !(width > 0.0) {
            return Err(Error::DegenerateBody(format!("observable {j} is a multiple of the identity")));
        }
        let s = UnitScaling { min: e.min(), width };
        mats.push(a.shift(-s.min).scale(1.0 / width));
        scalings.push(s);
    }
    Ok((ObservableSet::new(obs.profile().clone(), mats)?, scalings))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceRect {
    pub center: Vec<f64>,
    pub half_widths: Vec<f64>,
    pub alpha: f64,
    pub shots_per_observable: usize,
}

impl ConfidenceRect {
    /// Equal-split rectangle from unit-width outcome columns of equal length.
    pub fn from_unit_samples(columns: &[Vec<f64>], alpha: f64) -> Result<Self> {
        let m = columns.first().map_or(0, Vec::len);
        if columns.is_empty() || columns.iter().any(|c| c.len() != m) {
            return Err(Error::Shape("need equally many shots for every observable".into()));
        }
        let t = hoeffding_half_width(m, columns.len(), alpha)?;
        let center = columns.iter().map(|c| c.iter().sum::<f64>() / m as f64).collect();
        Self::new(center, vec![t; columns.len()], alpha, m)
    }

    /// Custom allocation; rejected unless the Hoeffding failure bound for
    /// unit widths stays within α.
    pub fn new(center: Vec<f64>, half_widths: Vec<f64>, alpha: f64, m: usize) -> Result<Self> {
        if center.len() != half_widths.len() {
            return Err(Error::Shape("one half width per observable".into()));
        }
        let p = hoeffding_bound(m, &half_widths, &vec![1.0; half_widths.len()])?;
        if p > alpha * (1.0 + 1e-12) {
            return Err(Error::Config(format!("half widths give failure bound {p} > α = {alpha}")));
        }
        Ok(Self {
            center,
            half_widths,
            alpha,
            shots_per_observable: m,
        })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(&self.center)
            .zip(&self.half_widths)
            .all(|((xi, c), t)| (xi - c).abs() <= *t)
    }

    /// `min_{x ∈ rect} u·x`.
    pub fn min_along(&self, u: &[f64]) -> f64 {
        u.iter()
            .zip(&self.center)
            .zip(&self.half_widths)
            .map(|((ui, c), t)| ui * c - ui.abs() * t)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub direction: Direction,
    pub sep_support_certified: f64,
    pub rect_min_along_direction: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub directions: usize,
    pub search_grid: usize,
    pub verify_grid: usize,
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            directions: 200,
            search_grid: 16,
            verify_grid: 64,
            refine_steps: 40,
            seed: 0,
        }
    }
}

fn margin(obs: &ObservableSet, rect: &ConfidenceRect, u: &Direction, grid: usize) -> Result<(f64, f64, f64)> {
    let x = obs.combination(u.components())?;
    let h = certified_sep_support_2qubit(&x, grid)?.certified_upper;
    let lo = rect.min_along(u.components());
    Ok((lo - h, h, lo))
}

/// Searches for a separating direction between the rectangle and the
/// separable range of unit-width two-qubit observables. Any returned
/// certificate has been recomputed on the verification grid and has
/// positive margin.
pub fn find_certificate(obs: &ObservableSet, rect: &ConfidenceRect, cfg: &CertifyConfig) -> Result<Option<Certificate>> {
    if !obs.profile().is_two_qubit() {
        return Err(Error::UnsupportedDimension(
            "certified separable supports exist only for two qubits".into(),
        ));
    }
    let k = obs.len();
    if rect.center.len() != k {
        return Err(Error::Shape("rectangle and observables differ in count".into()));
    }
    let starts: Vec<Direction> = if k <= 3 {
        direction_grid(k, cfg.directions.max(2 * k))?
    } else {
        (0..cfg.directions)
            .map(|i| Direction::new(random_real_unit(k, &mut task_rng(cfg.seed, i as u64))))
            .collect::<Result<_>>()?
    };
    let scored: Vec<(f64, Direction)> = starts
        .into_par_iter()
        .map(|u| Ok((margin(obs, rect, &u, cfg.search_grid)?.0, u)))
        .collect::<Result<_>>()?;
    let (mut best, mut u) = scored
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("non-empty direction set");

    // Pattern search around the best grid direction.
    let mut step = 0.1;
    for _ in 0..cfg.refine_steps {
        let mut improved = false;
        for i in 0..k {
            for sign in [1.0, -1.0] {
                let mut v = u.components().to_vec();
                v[i] += sign * step;
                let Ok(cand) = Direction::new(v) else { continue };
                let m = margin(obs, rect, &cand, cfg.search_grid)?.0;
                if m > best {
                    (best, u, improved) = (m, cand, true);
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let (m, h, lo) = margin(obs, rect, &u, cfg.verify_grid)?;
    Ok((m > 0.0).then_some(Certificate {
        direction: u,
        sep_support_certified: h,
        rect_min_along_direction: lo,
        margin: m,
    }))
}
