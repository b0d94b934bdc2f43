//! Lower bounds on volume ratios, Hoeffding failure probabilities and
//! projection bounds for nested convex bodies.

use serde::{Deserialize, Serialize};

use super::minimize::bisect_increasing;
use crate::error::{Error, Result};
use crate::qlinalg::DimensionProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    Theorem3General,
    Theorem3Bipartite,
    Prop10,
    Conjecture11,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: f64,
    pub formula_id: FormulaId,
}

/// Separable-ball lower bound on the minimal volume ratio for `k`
/// observables. For two parties of equal local dimension the bipartite
/// bound `1/(d²−1)^k` is also evaluated and the larger value is returned.
pub fn theorem3_bound(profile: &DimensionProfile, k: usize) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::Config("need at least one observable".into()));
    }
    let n = profile.parties();
    if n < 2 {
        return Err(Error::Domain(
            "a single party has no entangled states; the ratio is 1".into(),
        ));
    }
    let d = profile.total_dim() as f64;
    let b2 = d.powi(n as i32) / ((2.0 * d - 1.0).powi(n as i32 - 2) * (d * d - 1.0) + 1.0);
    let eps = b2.sqrt() / d * ((d - 1.0) / (d - b2)).sqrt();
    let general = BoundReport {
        value: eps.powi(k as i32),
        formula_id: FormulaId::Theorem3General,
    };
    let dims = profile.local_dims();
    if n == 2 && dims[0] == dims[1] {
        let dl = dims[0] as f64;
        let bip = (1.0 / (dl * dl - 1.0)).powi(k as i32);
        if bip >= general.value {
            return Ok(BoundReport {
                value: bip,
                formula_id: FormulaId::Theorem3Bipartite,
            });
        }
    }
    Ok(general)
}

/// Probability that any of the k estimators deviates by at least `t_j`
/// after `m` shots each: `1 − Π_j max(0, 1 − 2 exp(−2m (t_j/w_j)²))`.
pub fn hoeffding_bound(m: usize, t: &[f64], widths: &[f64]) -> Result<f64> {
    if m == 0 {
        return Err(Error::Config("need at least one shot".into()));
    }
    if t.len() != widths.len() || t.is_empty() {
        return Err(Error::Shape("one deviation and one width per observable".into()));
    }
    if t.iter().chain(widths).any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("deviations and widths must be positive".into()));
    }
    let keep: f64 = t
        .iter()
        .zip(widths)
        .map(|(&tj, &wj)| {
            let s = tj / wj;
            (1.0 - 2.0 * (-2.0 * m as f64 * s * s).exp()).max(0.0)
        })
        .product();
    Ok(1.0 - keep)
}

/// Equal-split half width `t = √(ln(2k/α) / (2m))` for unit-width observables.
pub fn hoeffding_half_width(m: usize, k: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    if m == 0 || k == 0 {
        return Err(Error::Config("need shots and observables".into()));
    }
    Ok(((2.0 * k as f64 / alpha).ln() / (2.0 * m as f64)).sqrt())
}

/// Minimal projected ratio for planar bodies: `1 − √(1 − r)`.
pub fn projection_bound_2d(ratio: f64) -> Result<f64> {
    check_ratio(ratio)?;
    Ok(1.0 - (1.0 - ratio).sqrt())
}

/// Root `c ∈ [0, 1]` of `r = c[1 + (k−1)(1 − c^{1/(k−1)})]`.
pub fn projection_bound_conjecture(ratio: f64, k: usize) -> Result<f64> {
    check_ratio(ratio)?;
    if k < 2 {
        return Err(Error::Domain("projection bound needs k ≥ 2".into()));
    }
    let km1 = (k - 1) as f64;
    let lhs = |c: f64| {
        if c <= 0.0 {
            return 0.0;
        }
        // 1 − c^{1/(k−1)} = −expm1(ln c / (k−1)), accurate for large k.
        c * (1.0 - km1 * (c.ln() / km1).exp_m1())
    };
    if ratio == 1.0 {
        return Ok(1.0);
    }
    Ok(bisect_increasing(|c| lhs(c) - ratio, 0.0, 1.0, 1e-15))
}

fn check_ratio(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("ratio {r} outside [0, 1]")));
    }
    Ok(())
}
