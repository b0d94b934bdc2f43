use serde::{Deserialize, Serialize};

use super::matrix::{HermitianMatrix, C64};
use crate::error::{Error, Result};

const UNIT_NORM_TOL: f64 = 1e-12;
const STATE_SPECTRUM_TOL: f64 = 1e-12;

/// Local dimensions (d₁,…,dₙ) of a multipartite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimensionProfile(Vec<usize>);

impl TryFrom<Vec<usize>> for DimensionProfile {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimensionProfile> for Vec<usize> {
    fn from(p: DimensionProfile) -> Self {
        p.0
    }
}

impl DimensionProfile {
    pub fn new(local_dims: Vec<usize>) -> Result<Self> {
        if local_dims.is_empty() || local_dims.contains(&0) {
            return Err(Error::Shape(format!(
                "invalid dimension profile {local_dims:?}"
            )));
        }
        Ok(Self(local_dims))
    }

    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n])
    }

    pub fn bipartite(d: usize) -> Self {
        Self(vec![d, d])
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.0
    }

    pub fn parties(&self) -> usize {
        self.0.len()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.0 == [2, 2]
    }

    /// Row-major stride of each tensor factor.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for s in (0..self.0.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.0[s + 1];
        }
        strides
    }

    /// Profile with factor `site` removed.
    pub fn without(&self, site: usize) -> Result<Self> {
        if site >= self.0.len() || self.0.len() == 1 {
            return Err(Error::Shape(format!(
                "cannot remove site {site} from profile {:?}",
                self.0
            )));
        }
        let mut v = self.0.clone();
        v.remove(site);
        Ok(Self(v))
    }

    pub(crate) fn check_matrix(&self, m: &HermitianMatrix) -> Result<()> {
        if m.dim() != self.total_dim() {
            return Err(Error::Shape(format!(
                "matrix dimension {} does not match profile {:?}",
                m.dim(),
                self.0
            )));
        }
        Ok(())
    }
}

/// Pure product state |ψ₁⟩⊗…⊗|ψₙ⟩ with unit-norm factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductState {
    factors: Vec<Vec<C64>>,
}

impl ProductState {
    /// Normalizes each factor; rejects zero vectors.
    pub fn new(factors: Vec<Vec<C64>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("product state needs at least one factor".into()));
        }
        let factors = factors
            .into_iter()
            .map(|f| {
                let n = norm(&f);
                if n == 0.0 || !n.is_finite() {
                    Err(Error::InvalidMatrix("zero or non-finite factor".into()))
                } else {
                    Ok(f.into_iter().map(|x| x / n).collect())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Vec<C64>] {
        &self.factors
    }

    pub fn profile(&self) -> DimensionProfile {
        DimensionProfile(self.factors.iter().map(Vec::len).collect())
    }

    pub fn is_normalized(&self) -> bool {
        self.factors
            .iter()
            .all(|f| (norm(f) - 1.0).abs() <= UNIT_NORM_TOL)
    }

    /// Full state vector in the row-major tensor convention.
    pub fn to_vector(&self) -> Vec<C64> {
        self.factors.iter().skip(1).fold(self.factors[0].clone(), |acc, f| {
            acc.iter()
                .flat_map(|a| f.iter().map(move |b| a * b))
                .collect()
        })
    }

    pub fn expectation(&self, m: &HermitianMatrix) -> f64 {
        m.expectation(&self.to_vector())
    }

    pub(crate) fn set_factor(&mut self, site: usize, v: Vec<C64>) {
        let n = norm(&v);
        self.factors[site] = v.into_iter().map(|x| x / n).collect();
    }
}

pub(crate) fn norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the values descending.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite spectrum".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<f64>) -> Self {
        Self(values)
    }

    /// Spectrum of a density matrix: non-negative, summing to one.
    pub fn state(values: Vec<f64>) -> Result<Self> {
        let s = Self::new(values)?;
        if !s.is_state() {
            return Err(Error::Domain(format!(
                "not a state spectrum: {:?}",
                s.0
            )));
        }
        Ok(s)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_state(&self) -> bool {
        let sum: f64 = self.0.iter().sum();
        self.0.iter().all(|&v| v >= -STATE_SPECTRUM_TOL) && (sum - 1.0).abs() <= STATE_SPECTRUM_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_basics() {
        let p = DimensionProfile::new(vec![2, 3, 2]).unwrap();
        assert_eq!(p.total_dim(), 12);
        assert_eq!(p.strides(), vec![6, 2, 1]);
        assert_eq!(p.without(1).unwrap().local_dims(), &[2, 2]);
        assert!(DimensionProfile::new(vec![]).is_err());
        assert!(DimensionProfile::new(vec![2, 0]).is_err());
    }

    #[test]
    fn product_state_vector() {
        let s = ProductState::new(vec![
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        assert!(s.is_normalized());
        let v = s.to_vector();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[0].re - h).abs() < 1e-15 && (v[1].re - h).abs() < 1e-15);
        assert_eq!(v[2], C64::new(0.0, 0.0));
        assert!(ProductState::new(vec![vec![C64::new(0.0, 0.0)]]).is_err());
    }

    #[test]
    fn spectrum_sorting_and_state_check() {
        let s = Spectrum::new(vec![0.1, 0.5, 0.2, 0.2]).unwrap();
        assert_eq!(s.values(), &[0.5, 0.2, 0.2, 0.1]);
        assert!(s.is_state());
        assert!(Spectrum::state(vec![0.5, 0.6]).is_err());
        assert!(Spectrum::state(vec![1.5, -0.5]).is_err());
    }
}
