use rayon::prelude::*;
use serde::Serialize;

use super::direction::{direction_grid, Direction};
use super::support::{SupportOracle, SupportSample};
use crate::error::{Error, Result};
use crate::qlinalg::ObservableSet;

pub const MEMBERSHIP_TOL: f64 = 1e-9;
const SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Halfspace {
    pub direction: Direction,
    pub offset: f64,
    /// Whether `offset` is a proven upper bound on the support function.
    pub certified: bool,
}

impl Halfspace {
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.direction.dot(x) <= self.offset + tol
    }
}

/// Polytope sandwich `conv(inner_vertices) ⊆ body ⊆ ∩ outer_halfspaces`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BodyApprox {
    k: usize,
    inner_vertices: Vec<Vec<f64>>,
    outer_halfspaces: Vec<Halfspace>,
}

impl BodyApprox {
    /// Checks that every vertex satisfies every halfspace within 1e−9.
    pub fn new(k: usize, inner_vertices: Vec<Vec<f64>>, outer_halfspaces: Vec<Halfspace>) -> Result<Self> {
        if inner_vertices.iter().any(|v| v.len() != k)
            || outer_halfspaces.iter().any(|h| h.direction.dim() != k)
        {
            return Err(Error::Shape(format!("body components must live in R^{k}")));
        }
        for h in &outer_halfspaces {
            if let Some(v) = inner_vertices.iter().find(|v| !h.contains(v, MEMBERSHIP_TOL)) {
                return Err(Error::Geometry(format!(
                    "vertex {v:?} violates halfspace {:?} ≤ {}",
                    h.direction.components(),
                    h.offset
                )));
            }
        }
        Ok(Self {
            k,
            inner_vertices,
            outer_halfspaces,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn inner_vertices(&self) -> &[Vec<f64>] {
        &self.inner_vertices
    }

    pub fn outer_halfspaces(&self) -> &[Halfspace] {
        &self.outer_halfspaces
    }

    /// True when every outer offset is a certified support bound.
    pub fn fully_certified(&self) -> bool {
        self.outer_halfspaces.iter().all(|h| h.certified)
    }

    /// Axis-aligned box from the ±eᵢ halfspaces, if all are present.
    pub fn bounding_box(&self) -> Option<Vec<(f64, f64)>> {
        (0..self.k)
            .map(|i| {
                let find = |positive: bool| {
                    let axis = Direction::axis(self.k, i, positive);
                    self.outer_halfspaces
                        .iter()
                        .filter(|h| h.direction == axis)
                        .map(|h| h.offset)
                        .fold(None, |m: Option<f64>, o| Some(m.map_or(o, |m| m.min(o))))
                };
                Some((-find(false)?, find(true)?))
            })
            .collect()
    }

    pub fn outer_contains(&self, x: &[f64]) -> bool {
        self.outer_halfspaces.iter().all(|h| h.contains(x, 0.0))
    }
}

/// Queries `oracle` along `n` grid directions plus the coordinate axes and
/// assembles the polytope sandwich. Oracle calls run in parallel.
pub fn build_body(obs: &ObservableSet, oracle: &dyn SupportOracle, n: usize) -> Result<BodyApprox> {
    let k = obs.len();
    if k == 0 || k > 3 {
        return Err(Error::UnsupportedDimension(format!(
            "bodies are built for 1 ≤ k ≤ 3 observables, got {k}"
        )));
    }
    let mut dirs = direction_grid(k, n)?;
    for i in 0..k {
        for positive in [true, false] {
            let axis = Direction::axis(k, i, positive);
            if !dirs.contains(&axis) {
                dirs.push(axis);
            }
        }
    }
    let samples: Vec<SupportSample> = dirs
        .par_iter()
        .map(|u| {
            oracle.support(obs, u).map_err(|e| Error::Oracle {
                direction: u.components().to_vec(),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(assemble(k, &samples))
}

/// Builds a body from precomputed samples (deduplicating vertices).
pub fn assemble(k: usize, samples: &[SupportSample]) -> BodyApprox {
    let mut keyed: Vec<(Vec<i64>, Vec<f64>)> = samples
        .iter()
        .map(|s| {
            let key = s.support_point.iter().map(|x| (x / SNAP).round() as i64).collect();
            (key, s.support_point.clone())
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let inner: Vec<Vec<f64>> = keyed.into_iter().map(|(_, p)| p).collect();
    let halfspaces = samples
        .iter()
        .map(|s| {
            let reach = inner
                .iter()
                .map(|v| s.direction.dot(v))
                .fold(f64::NEG_INFINITY, f64::max);
            Halfspace {
                direction: s.direction.clone(),
                offset: s.support_value.max(reach),
                certified: s.certified,
            }
        })
        .collect();
    BodyApprox {
        k,
        inner_vertices: inner,
        outer_halfspaces: halfspaces,
    }
}
