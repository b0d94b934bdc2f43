//! Alternating (seesaw) optimization of product-state expectation values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::random::random_unit_vector;
use crate::qlinalg::{eigh, reduce_to_site, DimensionProfile, HermitianMatrix, ProductState, C64};
use crate::rng::task_rng;

/// Relative width of the eigenvalue window treated as degenerate.
const TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once a full sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            tol: 1e-12,
            seed: 0,
        }
    }
}

impl SeesawConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("seesaw needs at least one restart".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("seesaw tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeesawResult {
    /// Expectation value of the returned state, an inner bound on the
    /// extremum.
    pub value: f64,
    pub state: ProductState,
    pub converged: bool,
    pub iterations: usize,
    /// Objective after each full sweep of the run that produced `state`.
    pub history: Vec<f64>,
}

/// Best seesaw run over `cfg.restarts` random product starts. Restarts run in
/// parallel, each on its own random stream.
pub fn seesaw_product_extremum(
    x: &HermitianMatrix,
    profile: &DimensionProfile,
    sense: Sense,
    cfg: &SeesawConfig,
) -> Result<SeesawResult> {
    cfg.validate()?;
    profile.check_matrix(x)?;
    let runs: Vec<SeesawResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = task_rng(cfg.seed, r as u64);
            let factors = profile
                .local_dims()
                .iter()
                .map(|&d| random_unit_vector(d, &mut rng))
                .collect();
            seesaw_from(x, profile, sense, ProductState::new(factors)?, cfg.max_iters, cfg.tol)
        })
        .collect::<Result<_>>()?;
    Ok(runs
        .into_iter()
        .reduce(|a, b| if better(sense, b.value, a.value) { b } else { a })
        .expect("at least one restart"))
}

fn better(sense: Sense, a: f64, b: f64) -> bool {
    match sense {
        Sense::Max => a > b,
        Sense::Min => a < b,
    }
}

/// A single seesaw run from `start`.
pub fn seesaw_from(
    x: &HermitianMatrix,
    profile: &DimensionProfile,
    sense: Sense,
    start: ProductState,
    max_iters: usize,
    tol: f64,
) -> Result<SeesawResult> {
    if start.profile() != *profile {
        return Err(Error::Shape("start state does not match the profile".into()));
    }
    let mut state = start;
    let mut value = state.expectation(x);
    let mut history = vec![value];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        for site in 0..profile.parties() {
            let local = reduce_to_site(x, profile, state.factors(), site)?;
            let v = extreme_vector(&local, sense, &state.factors()[site])?;
            state.set_factor(site, v);
        }
        let next = state.expectation(x);
        history.push(next);
        let gain = match sense {
            Sense::Max => next - value,
            Sense::Min => value - next,
        };
        value = next;
        if gain.abs() < tol {
            converged = true;
            break;
        }
    }
    Ok(SeesawResult {
        value,
        state,
        converged,
        iterations,
        history,
    })
}

/// Extreme eigenvector of `m`; within a degenerate extreme eigenspace, the
/// projection of `previous` is preferred so that iterates do not jump.
fn extreme_vector(m: &HermitianMatrix, sense: Sense, previous: &[C64]) -> Result<Vec<C64>> {
    let e = eigh(m)?;
    let vals = e.values();
    let n = vals.len();
    let order: Vec<usize> = match sense {
        Sense::Max => (0..n).collect(),
        Sense::Min => (0..n).rev().collect(),
    };
    let best = vals[order[0]];
    let scale = vals[0].abs().max(vals[n - 1].abs()).max(1.0);
    let tied: Vec<usize> = order
        .into_iter()
        .take_while(|&i| (vals[i] - best).abs() <= TIE_TOL * scale)
        .collect();
    if tied.len() == 1 {
        return Ok(e.vector(tied[0]));
    }
    let mut proj = vec![C64::new(0.0, 0.0); n];
    for &i in &tied {
        let v = e.vector(i);
        let c: C64 = v.iter().zip(previous).map(|(a, b)| a.conj() * b).sum();
        for (p, vi) in proj.iter_mut().zip(&v) {
            *p += c * vi;
        }
    }
    let norm = proj.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(if norm > 1e-6 {
        proj.into_iter().map(|z| z / norm).collect()
    } else {
        e.vector(tied[0])
    })
}
