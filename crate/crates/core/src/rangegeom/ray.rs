use std::f64::consts::FRAC_PI_2;

use super::direction::Direction;
use super::support::SupportOracle;
use crate::error::{Error, Result};
use crate::qlinalg::ObservableSet;

const BISECTIONS: usize = 50;
const END_GAP: f64 = 1e-6;

/// Distance from the origin to the boundary of a planar body along angle
/// `phi`.
///
/// Bisects over supporting directions ψ ∈ (φ − π/2, φ + π/2) until the
/// support point crosses the ray; the supporting line at the crossing then
/// meets the ray at `h(ψ)/cos(ψ − φ)`. The origin must be interior, which
/// holds for traceless observables.
pub fn ray_radius_2d(obs: &ObservableSet, oracle: &dyn SupportOracle, phi: f64) -> Result<f64> {
    if obs.len() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "ray radius needs exactly two observables, got {}",
            obs.len()
        )));
    }
    let (c, s) = (phi.cos(), phi.sin());
    let h_phi = oracle.support(obs, &Direction::from_angle(phi))?.support_value;
    if h_phi <= 0.0 {
        return Err(Error::Geometry(format!("origin is not interior along φ = {phi}")));
    }
    let side = |psi: f64| -> Result<(f64, f64)> {
        let smp = oracle.support(obs, &Direction::from_angle(psi))?;
        let x = &smp.support_point;
        Ok((c * x[1] - s * x[0], smp.support_value))
    };
    let (mut lo, mut hi) = (phi - FRAC_PI_2 + END_GAP, phi + FRAC_PI_2 - END_GAP);
    let (s_lo, _) = side(lo)?;
    let (s_hi, _) = side(hi)?;
    if s_lo > 0.0 || s_hi < 0.0 {
        return Err(Error::Geometry(format!(
            "support points do not straddle the ray at φ = {phi}; origin outside the body"
        )));
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if side(mid)?.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Every supporting line caps the ray at h(ψ)/cos(ψ − φ); take the
    // tightest of the bracketing pair and ψ = φ itself.
    let r = |psi: f64| -> Result<f64> { Ok(side(psi)?.1 / (psi - phi).cos()) };
    Ok(r(lo)?.min(r(hi)?).min(h_phi))
}
