//! Complete elliptic integrals in the parameter convention
//! `K(m) = ∫₀^{π/2} dt / √(1 − m sin²t)`, evaluated by the
//! arithmetic-geometric mean.
//!
//! The AGM recurrence converges for every `m < 1`, including negative `m`,
//! which the product-observable volume formula needs whenever
//! `tan(x/2) > tan(y/2)`.

use crate::error::{Error, Result};

const AGM_TOL: f64 = 1e-15;
const MAX_ITERS: usize = 64;

/// Complete elliptic integral of the first kind. Domain `m < 1`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    check(m, false)?;
    let (a, _) = agm(m);
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

/// Complete elliptic integral of the second kind. Domain `m ≤ 1`.
pub fn elliptic_e(m: f64) -> Result<f64> {
    check(m, true)?;
    if m == 1.0 {
        return Ok(1.0);
    }
    let (a, sum) = agm(m);
    Ok(std::f64::consts::FRAC_PI_2 / a * (1.0 - sum))
}

/// `K(m) − E(m)` without forming the two large terms separately when m is
/// close to one.
pub fn elliptic_k_minus_e(m: f64) -> Result<f64> {
    check(m, false)?;
    let (a, sum) = agm(m);
    Ok(std::f64::consts::FRAC_PI_2 / a * sum)
}

fn check(m: f64, allow_one: bool) -> Result<()> {
    if !m.is_finite() || m > 1.0 || (m == 1.0 && !allow_one) {
        return Err(Error::Domain(format!("elliptic parameter m = {m}")));
    }
    Ok(())
}

/// Returns `AGM(1, √(1−m))` and `Σ 2^{n−1} c_n²` with `c₀² = m`.
fn agm(m: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m;
    let mut pow = 0.5;
    for _ in 0..MAX_ITERS {
        let c = 0.5 * (a - b);
        pow *= 2.0;
        sum += pow * c * c;
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        if c.abs() <= AGM_TOL * a {
            break;
        }
    }
    (a, sum)
}
