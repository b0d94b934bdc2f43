use crate::error::{Error, Result};
use crate::qlinalg::{lambda_min, partial_transpose, DimensionProfile, HermitianMatrix};

pub const PPT_TOL: f64 = 1e-10;

/// Smallest eigenvalue of the partial transpose on the second party.
pub fn ppt_min_eigenvalue(rho: &HermitianMatrix, profile: &DimensionProfile) -> Result<f64> {
    if profile.parties() != 2 {
        return Err(Error::Shape(format!(
            "PPT check needs a bipartite profile, got {} parties",
            profile.parties()
        )));
    }
    lambda_min(&partial_transpose(rho, profile, 1)?)
}

pub fn ppt_check(rho: &HermitianMatrix, profile: &DimensionProfile) -> Result<bool> {
    Ok(ppt_min_eigenvalue(rho, profile)? >= -PPT_TOL)
}
