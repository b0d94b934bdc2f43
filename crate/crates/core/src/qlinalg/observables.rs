use serde::{Deserialize, Serialize};

use super::matrix::HermitianMatrix;
use super::profile::DimensionProfile;
use crate::error::{Error, Result};

/// Ordered tuple (A₁,…,A_k) of observables on a common tensor-product space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    profile: DimensionProfile,
    observables: Vec<HermitianMatrix>,
}

impl ObservableSet {
    /// Every observable must have dimension `profile.total_dim()`. An empty
    /// list is allowed (it arises when every observable is dependent).
    pub fn new(profile: DimensionProfile, observables: Vec<HermitianMatrix>) -> Result<Self> {
        for (i, a) in observables.iter().enumerate() {
            if a.dim() != profile.total_dim() {
                return Err(Error::Shape(format!(
                    "observable {i} has dimension {}, profile {:?} needs {}",
                    a.dim(),
                    profile.local_dims(),
                    profile.total_dim()
                )));
            }
        }
        Ok(Self {
            profile,
            observables,
        })
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn observables(&self) -> &[HermitianMatrix] {
        &self.observables
    }

    pub fn get(&self, i: usize) -> &HermitianMatrix {
        &self.observables[i]
    }

    /// Number of observables k.
    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.profile.total_dim()
    }

    /// Σ uᵢ Aᵢ.
    pub fn combination(&self, u: &[f64]) -> Result<HermitianMatrix> {
        HermitianMatrix::linear_combination(u, &self.observables)
    }

    /// Expectation vector (⟨ψ|A₁|ψ⟩,…,⟨ψ|A_k|ψ⟩).
    pub fn expectations(&self, psi: &[super::C64]) -> Vec<f64> {
        self.observables.iter().map(|a| a.expectation(psi)).collect()
    }

    /// New set B_i = Σ_j mix[i][j] A_j + shift[i]·1.
    pub fn affine_image(&self, mix: &[Vec<f64>], shift: &[f64]) -> Result<Self> {
        if mix.len() != shift.len() {
            return Err(Error::Shape("mixing rows and shifts differ in length".into()));
        }
        let obs = mix
            .iter()
            .zip(shift)
            .map(|(row, &c)| Ok(self.combination(row)?.shift(c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.profile.clone(), obs)
    }
}
