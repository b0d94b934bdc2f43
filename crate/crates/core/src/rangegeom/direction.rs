use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Unit vector in R^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Direction(Vec<f64>);

impl TryFrom<Vec<f64>> for Direction {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Direction> for Vec<f64> {
    fn from(d: Direction) -> Self {
        d.0
    }
}

impl Direction {
    /// Normalizes `v`; rejects zero or non-finite input.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v.is_empty() || n == 0.0 || !n.is_finite() {
            return Err(Error::Geometry(format!("cannot normalize {v:?}")));
        }
        Ok(Self(v.into_iter().map(|x| x / n).collect()))
    }

    /// The i-th signed coordinate axis in R^k.
    pub fn axis(k: usize, i: usize, positive: bool) -> Self {
        let mut v = vec![0.0; k];
        v[i] = if positive { 1.0 } else { -1.0 };
        Self(v)
    }

    pub fn from_angle(phi: f64) -> Self {
        Self(vec![phi.cos(), phi.sin()])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn is_unit(&self) -> bool {
        (self.0.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() <= UNIT_TOL
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

/// Deterministic direction sets: `k = 1` gives ±1, `k = 2` gives `n`
/// equally spaced angles starting at 0, `k = 3` gives a Fibonacci sphere.
pub fn direction_grid(k: usize, n: usize) -> Result<Vec<Direction>> {
    if !(1..=3).contains(&k) {
        return Err(Error::UnsupportedDimension(format!(
            "direction grids exist for k = 1, 2, 3, not {k}"
        )));
    }
    if n < 2 * k {
        return Err(Error::Config(format!("need at least {} directions, got {n}", 2 * k)));
    }
    Ok(match k {
        1 => vec![Direction(vec![1.0]), Direction(vec![-1.0])],
        2 => (0..n)
            .map(|j| Direction::from_angle(std::f64::consts::TAU * j as f64 / n as f64))
            .collect(),
        _ => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|j| {
                    let z = 1.0 - (2 * j + 1) as f64 / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * j as f64;
                    Direction(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect()
        }
    })
}
