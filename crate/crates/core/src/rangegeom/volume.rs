//! Certified volume brackets for polytope sandwiches.
//!
//! The lower bound is the exact volume of the inner hull. The upper bound is
//! exact for k ≤ 2 (interval length, clipped polygon area) and a 99%
//! Wilson upper confidence limit from Monte-Carlo membership tests for k = 3.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::body::{BodyApprox, Halfspace};
use super::hull::{affine_rank, hull_2d, hull_3d, polygon_area};
use crate::error::{Error, Result};
use crate::rng::task_rng;

pub const MIN_MC_SAMPLES: usize = 1000;
const RANK_TOL: f64 = 1e-9;
const WILSON_Z: f64 = 2.576;
const MC_CHUNK: usize = 8192;
const ROUNDING: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeBracket {
    pub lower: f64,
    pub upper: f64,
    pub estimate: f64,
    /// Affine rank of the inner vertices; volumes are zero when below k.
    pub affine_rank: usize,
}

impl VolumeBracket {
    /// Membership up to floating-point rounding of the bracket ends.
    pub fn contains(&self, v: f64) -> bool {
        let slack = ROUNDING * v.abs().max(self.upper.abs());
        self.lower - slack <= v && v <= self.upper + slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBracket {
    pub lower: f64,
    pub upper: f64,
    pub estimate: f64,
}

impl RatioBracket {
    /// Membership up to floating-point rounding of the bracket ends.
    pub fn contains(&self, v: f64) -> bool {
        let slack = ROUNDING * v.abs().max(self.upper.abs());
        self.lower - slack <= v && v <= self.upper + slack
    }
}

pub fn volume_bracket(body: &BodyApprox, mc_samples: usize, seed: u64) -> Result<VolumeBracket> {
    if mc_samples < MIN_MC_SAMPLES {
        return Err(Error::Config(format!(
            "at least {MIN_MC_SAMPLES} Monte-Carlo samples required, got {mc_samples}"
        )));
    }
    let k = body.k();
    if !(1..=3).contains(&k) {
        return Err(Error::UnsupportedDimension(format!("volume for k = {k}")));
    }
    let rank = affine_rank(body.inner_vertices(), RANK_TOL);
    if rank < k {
        return Ok(VolumeBracket {
            lower: 0.0,
            upper: 0.0,
            estimate: 0.0,
            affine_rank: rank,
        });
    }
    let lower = inner_volume(body)?;
    let upper = match k {
        1 => {
            let b = body
                .bounding_box()
                .ok_or_else(|| Error::Geometry("interval needs both end halfspaces".into()))?;
            b[0].1 - b[0].0
        }
        2 => outer_area_2d(body),
        _ => outer_volume_mc(body, mc_samples, seed)?,
    }
    .max(lower);
    Ok(VolumeBracket {
        lower,
        upper,
        estimate: lower,
        affine_rank: rank,
    })
}

fn inner_volume(body: &BodyApprox) -> Result<f64> {
    let v = body.inner_vertices();
    Ok(match body.k() {
        1 => {
            let (lo, hi) = v
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[0]), hi.max(p[0])));
            hi - lo
        }
        2 => {
            let pts: Vec<[f64; 2]> = v.iter().map(|p| [p[0], p[1]]).collect();
            polygon_area(&hull_2d(&pts))
        }
        _ => {
            let pts: Vec<[f64; 3]> = v.iter().map(|p| [p[0], p[1], p[2]]).collect();
            hull_3d(&pts)
                .ok_or_else(|| Error::DegenerateBody("inner vertices are coplanar".into()))?
                .volume()
        }
    })
}

/// Area of the halfspace intersection, clipping a starting box edge by
/// edge.
fn outer_area_2d(body: &BodyApprox) -> f64 {
    let (x0, x1, y0, y1) = match body.bounding_box() {
        Some(b) => (b[0].0, b[0].1, b[1].0, b[1].1),
        None => {
            let r = 1e3 * (1.0 + body.outer_halfspaces().iter().map(|h| h.offset.abs()).fold(0.0, f64::max));
            (-r, r, -r, r)
        }
    };
    let mut poly = vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
    for h in body.outer_halfspaces() {
        poly = clip(&poly, h);
        if poly.is_empty() {
            return 0.0;
        }
    }
    polygon_area(&poly)
}

fn clip(poly: &[[f64; 2]], h: &Halfspace) -> Vec<[f64; 2]> {
    let u = h.direction.components();
    let val = |p: &[f64; 2]| u[0] * p[0] + u[1] * p[1] - h.offset;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (va, vb) = (val(&a), val(&b));
        if va <= 0.0 {
            out.push(a);
        }
        if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
            let t = va / (va - vb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

fn outer_volume_mc(body: &BodyApprox, samples: usize, seed: u64) -> Result<f64> {
    let bbox = body
        .bounding_box()
        .ok_or_else(|| Error::Geometry("Monte-Carlo volume needs the ±eᵢ halfspaces".into()))?;
    let box_vol: f64 = bbox.iter().map(|(lo, hi)| hi - lo).product();
    if box_vol <= 0.0 {
        return Ok(0.0);
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = task_rng(seed, c as u64);
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut x = vec![0.0; bbox.len()];
            (0..count)
                .filter(|_| {
                    for (xi, (lo, hi)) in x.iter_mut().zip(&bbox) {
                        *xi = lo + (hi - lo) * rng.random::<f64>();
                    }
                    body.outer_contains(&x)
                })
                .count()
        })
        .sum();
    Ok(box_vol * wilson_upper(hits, samples, WILSON_Z))
}

/// Upper end of the Wilson score interval for a binomial proportion.
pub fn wilson_upper(hits: usize, n: usize, z: f64) -> f64 {
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let centre = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre + spread) / (1.0 + z2 / n)).min(1.0)
}

/// `lower = sep.lower / all.upper`, `upper = min(1, sep.upper / all.lower)`,
/// `estimate = sep.estimate / all.estimate`.
pub fn ratio_bracket(sep: &VolumeBracket, all: &VolumeBracket) -> Result<RatioBracket> {
    if !(all.lower > 0.0) {
        return Err(Error::DegenerateBody(
            "the joint numerical range has no interior in these coordinates".into(),
        ));
    }
    Ok(RatioBracket {
        lower: sep.lower / all.upper,
        upper: (sep.upper / all.lower).min(1.0),
        estimate: sep.estimate / all.estimate,
    })
}
