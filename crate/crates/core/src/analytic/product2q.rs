//! Volumes of the numerical ranges of the locally traceless product pair
//! `A₁ = X⊗X`, `A₂ = (cos θ_A X + sin θ_A Z) ⊗ (cos θ_B X + sin θ_B Z)`.
//!
//! The separable range is the Minkowski sum `E(θ₋) + E(θ₊)` of the ellipses
//! `E(θ) = {½(cos w, cos(w − θ))}`. Away from degenerate angles the area has
//! a closed form in complete elliptic integrals; at the removable
//! singularities it is evaluated from mixed areas instead.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::elliptic::elliptic_k_minus_e;
use super::minimize::golden_min;
use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::qlinalg::{kron, DimensionProfile, HermitianMatrix, ObservableSet};

// Below this |sin| or |cos| of a half angle one ellipse term has T = 0 or ∞.
const HALF_ANGLE_EPS: f64 = 1e-6;
// Below this |T(θ₊,θ₋) − T(θ₋,θ₊)| the difference quotient loses digits.
const T_GAP_EPS: f64 = 1e-3;
const QUAD_TOL: f64 = 1e-13;
const DEGENERATE_AREA: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductAngles {
    theta_a: f64,
    theta_b: f64,
}

impl ProductAngles {
    pub fn new(theta_a: f64, theta_b: f64) -> Result<Self> {
        let ok = |t: f64| (0.0..=PI).contains(&t);
        if !ok(theta_a) || !ok(theta_b) {
            return Err(Error::Domain(format!(
                "angles ({theta_a}, {theta_b}) outside [0, π]"
            )));
        }
        Ok(Self { theta_a, theta_b })
    }

    pub fn theta_a(&self) -> f64 {
        self.theta_a
    }

    pub fn theta_b(&self) -> f64 {
        self.theta_b
    }

    pub fn theta_minus(&self) -> f64 {
        self.theta_a - self.theta_b
    }

    pub fn theta_plus(&self) -> f64 {
        self.theta_a + self.theta_b
    }

    /// The observable pair (X⊗X, a⊗b) for these angles.
    pub fn observables(&self) -> ObservableSet {
        let x = HermitianMatrix::pauli_x();
        let z = HermitianMatrix::pauli_z();
        let local = |t: f64| x.scale(t.cos()).add(&z.scale(t.sin()));
        let a1 = kron(&x, &x);
        let a2 = kron(&local(self.theta_a), &local(self.theta_b));
        ObservableSet::new(DimensionProfile::qubits(2), vec![a1, a2])
            .expect("two-qubit observables match the profile")
    }
}

/// Area of the separable numerical range.
pub fn sep_volume_product_2q(angles: &ProductAngles) -> f64 {
    let (tm, tp) = (angles.theta_minus(), angles.theta_plus());
    closed_form_sep(tm, tp).unwrap_or_else(|| minkowski_ellipse_area(tm, tp))
}

/// Area of the joint numerical range over all states.
pub fn all_volume_product_2q(angles: &ProductAngles) -> f64 {
    let (sa, sb) = (angles.theta_a.sin(), angles.theta_b.sin());
    if sa.abs() < 1e-15 {
        return PI * sb.abs();
    }
    if sb.abs() < 1e-15 {
        return PI * sa.abs();
    }
    let (tm, tp) = (angles.theta_minus(), angles.theta_plus());
    2.0 * (tm.cos() - tp.cos() + g_minus(tm) + g_plus(tp))
}

/// Ratio of the separable to the full area.
pub fn ratio_product_2q(angles: &ProductAngles) -> Result<f64> {
    let all = all_volume_product_2q(angles);
    if all <= DEGENERATE_AREA {
        return Err(Error::DegenerateBody(format!(
            "joint numerical range at θ_A = {}, θ_B = {} has zero area",
            angles.theta_a, angles.theta_b
        )));
    }
    Ok(sep_volume_product_2q(angles) / all)
}

/// The ratio written directly as
/// `[(π/8)(|sin θ₋| + |sin θ₊|) − F̃/T̃] / [cos θ₋ − cos θ₊ + G₋ + G₊]`.
/// `None` where the expression is singular.
pub fn ratio_product_2q_closed_form(angles: &ProductAngles) -> Option<f64> {
    let (tm, tp) = (angles.theta_minus(), angles.theta_plus());
    let t_mp = t_fn(tm, tp)?;
    let t_pm = t_fn(tp, tm)?;
    let f_tilde = f_fn(tm, tp, t_mp)? - f_fn(tp, tm, t_pm)?;
    let t_tilde = t_mp - t_pm;
    if t_tilde.abs() < T_GAP_EPS {
        return None;
    }
    let den = tm.cos() - tp.cos() + g_minus(tm) + g_plus(tp);
    if den <= DEGENERATE_AREA {
        return None;
    }
    let num = PI / 8.0 * (tm.sin().abs() + tp.sin().abs()) - f_tilde / t_tilde;
    Some(num / den)
}

/// Global minimum of the ratio: scan `θ = iπ/grid` on both axes, then
/// refine the best cell by alternating golden-section searches.
pub fn minimize_ratio_product_2q(grid: usize) -> Result<(f64, ProductAngles)> {
    if grid < 2 {
        return Err(Error::Config("angle grid needs at least 2 intervals".into()));
    }
    let step = PI / grid as f64;
    let eval = |a: f64, b: f64| {
        ProductAngles::new(a.clamp(0.0, PI), b.clamp(0.0, PI))
            .and_then(|p| ratio_product_2q(&p))
            .unwrap_or(f64::INFINITY)
    };
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=grid {
        for j in 0..=grid {
            let (a, b) = (i as f64 * step, j as f64 * step);
            let r = eval(a, b);
            if r < best.0 {
                best = (r, a, b);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(Error::DegenerateBody("no non-degenerate angle pair".into()));
    }
    let (mut r, mut a, mut b) = best;
    for _ in 0..4 {
        let (na, va) = golden_min(|x| eval(x, b), (a - step).max(0.0), (a + step).min(PI), 1e-10);
        if va < r {
            r = va;
            a = na;
        }
        let (nb, vb) = golden_min(|y| eval(a, y), (b - step).max(0.0), (b + step).min(PI), 1e-10);
        if vb < r {
            r = vb;
            b = nb;
        }
    }
    Ok((r, ProductAngles::new(a, b)?))
}

fn g_minus(tm: f64) -> f64 {
    (0.5 * tm * tm.sin()).abs()
}

fn g_plus(tp: f64) -> f64 {
    ((0.5 * tp - FRAC_PI_2) * tp.sin()).abs()
}

/// `T(x, y) = |tan(x/2) / tan(y/2)|`, `None` if either tangent is 0 or ∞.
fn t_fn(x: f64, y: f64) -> Option<f64> {
    let (sx, cx) = ((0.5 * x).sin().abs(), (0.5 * x).cos().abs());
    let (sy, cy) = ((0.5 * y).sin().abs(), (0.5 * y).cos().abs());
    if [sx, cx, sy, cy].iter().any(|&v| v < HALF_ANGLE_EPS) {
        return None;
    }
    Some((sx / cx) / (sy / cy))
}

/// `F(x, y) = |sin(x/2) cos(y/2)| [K(1 − T²) − E(1 − T²)]`.
fn f_fn(x: f64, y: f64, t: f64) -> Option<f64> {
    let pre = ((0.5 * x).sin() * (0.5 * y).cos()).abs();
    elliptic_k_minus_e(1.0 - t * t).ok().map(|ke| pre * ke)
}

fn closed_form_sep(tm: f64, tp: f64) -> Option<f64> {
    let t_mp = t_fn(tm, tp)?;
    let t_pm = t_fn(tp, tm)?;
    let gap = t_pm - t_mp;
    if gap.abs() < T_GAP_EPS {
        return None;
    }
    let f_diff = f_fn(tm, tp, t_mp)? - f_fn(tp, tm, t_pm)?;
    Some(PI / 4.0 * (tm.sin().abs() + tp.sin().abs()) + 2.0 * f_diff / gap)
}

/// Area of `E(θ₁) + E(θ₂)` as `A(E₁) + 2V(E₁, E₂) + A(E₂)`, with the mixed
/// area `V` integrated along the boundary of `E₂`.
pub fn minkowski_ellipse_area(theta1: f64, theta2: f64) -> f64 {
    let area = |t: f64| PI * t.sin().abs() / 4.0;
    let (c1, s1) = (theta1.cos(), theta1.sin());
    let (c2, s2) = (theta2.cos(), theta2.sin());
    // h₁(v) = ½|v₁ + v₂ e^{−iθ₁}| is the support function of E(θ₁).
    let h1 = |v0: f64, v1: f64| 0.5 * ((v0 + v1 * c1).powi(2) + (v1 * s1).powi(2)).sqrt();
    let integrand = |w: f64| {
        // p₂'(w) = ½(−sin w, −cos θ₂ sin w + sin θ₂ cos w); rotate by −π/2.
        let dx = -0.5 * w.sin();
        let dy = 0.5 * (-c2 * w.sin() + s2 * w.cos());
        h1(dy, -dx)
    };
    // Split at quarter turns so kinks of degenerate ellipses fall near
    // subinterval boundaries.
    let mut mixed = 0.0;
    for q in 0..8 {
        let a = q as f64 * PI / 4.0;
        mixed += integrate(integrand, a, a + PI / 4.0, QUAD_TOL)
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
    }
    area(theta1) + mixed + area(theta2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::eigh;

    fn angles(a: f64, b: f64) -> ProductAngles {
        ProductAngles::new(a, b).unwrap()
    }

    /// Shoelace area of the Minkowski sum traced by support points.
    fn polygon_oracle(t1: f64, t2: f64, n: usize) -> f64 {
        let support = |t: f64, phi: f64| {
            // maximize (cos φ, sin φ)·½(cos w, cos(w−t)) over w
            let (u0, u1) = (phi.cos(), phi.sin());
            let a = u0 + u1 * t.cos();
            let b = u1 * t.sin();
            let w = b.atan2(a);
            (0.5 * w.cos(), 0.5 * (w - t).cos())
        };
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / n as f64;
                let (a, b) = support(t1, phi);
                let (c, d) = support(t2, phi);
                (a + c, b + d)
            })
            .collect();
        let mut s = 0.0;
        for i in 0..n {
            let (x0, y0) = pts[i];
            let (x1, y1) = pts[(i + 1) % n];
            s += x0 * y1 - x1 * y0;
        }
        0.5 * s.abs()
    }

    /// Shoelace area of the all-states range from top eigenvectors.
    fn joint_range_oracle(p: &ProductAngles, n: usize) -> f64 {
        let obs = p.observables();
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / n as f64;
                let m = obs.combination(&[phi.cos(), phi.sin()]).unwrap();
                let v = eigh(&m).unwrap().top_vector();
                let e = obs.expectations(&v);
                (e[0], e[1])
            })
            .collect();
        let mut s = 0.0;
        for i in 0..n {
            let (x0, y0) = pts[i];
            let (x1, y1) = pts[(i + 1) % n];
            s += x0 * y1 - x1 * y0;
        }
        0.5 * s.abs()
    }

    #[test]
    fn xx_zz_diamond_and_square() {
        let p = angles(FRAC_PI_2, FRAC_PI_2);
        assert!((sep_volume_product_2q(&p) - 2.0).abs() < 1e-10);
        assert!((all_volume_product_2q(&p) - 4.0).abs() < 1e-12);
        assert!((ratio_product_2q(&p).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn coincident_observables_are_degenerate() {
        let p = angles(0.0, 0.0);
        assert!(sep_volume_product_2q(&p).abs() < 1e-12);
        assert!(matches!(ratio_product_2q(&p), Err(Error::DegenerateBody(_))));
    }

    #[test]
    fn single_site_special_case() {
        let p = angles(0.0, FRAC_PI_2);
        assert!((all_volume_product_2q(&p) - PI).abs() < 1e-12);
        let q = angles(PI, 0.7);
        assert!((all_volume_product_2q(&q) - PI * 0.7f64.sin()).abs() < 1e-12);
        // the general formula agrees with the special case in the limit
        let r = angles(1e-9, 0.7);
        assert!((all_volume_product_2q(&r) - PI * 0.7f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn figure_angles_match_polygon_oracle() {
        let p = angles(3.0 * PI / 4.0, PI / 3.0);
        let oracle = polygon_oracle(p.theta_minus(), p.theta_plus(), 8000);
        assert!((sep_volume_product_2q(&p) - oracle).abs() < 1e-4);
        let all = joint_range_oracle(&p, 4000);
        assert!((all_volume_product_2q(&p) - all).abs() < 1e-3);
    }

    #[test]
    fn closed_form_matches_mixed_area_quadrature() {
        for i in 1..12 {
            for j in 1..12 {
                let (a, b) = (i as f64 * PI / 12.3, j as f64 * PI / 12.7);
                let p = angles(a, b);
                let (tm, tp) = (p.theta_minus(), p.theta_plus());
                if let Some(cf) = closed_form_sep(tm, tp) {
                    let q = minkowski_ellipse_area(tm, tp);
                    assert!((cf - q).abs() < 1e-10, "({a},{b}): {cf} vs {q}");
                }
            }
        }
    }

    #[test]
    fn mixed_area_of_equal_ellipses() {
        // E + E = 2E has four times the area of E.
        for t in [0.3, 1.0, 2.5] {
            let v = minkowski_ellipse_area(t, t);
            assert!((v - PI * f64::sin(t)).abs() < 1e-11);
        }
    }

    #[test]
    fn closed_form_ratio_expression() {
        let mut checked = 0;
        for i in 1..20 {
            for j in 1..20 {
                let p = angles(i as f64 * PI / 20.5, j as f64 * PI / 21.0);
                if let Some(r) = ratio_product_2q_closed_form(&p) {
                    assert!((r - ratio_product_2q(&p).unwrap()).abs() < 1e-12);
                    checked += 1;
                }
            }
        }
        assert!(checked > 300);
    }

    #[test]
    fn symmetries_and_containment() {
        for i in 0..=16 {
            for j in 0..=16 {
                let (a, b) = (i as f64 * PI / 16.0, j as f64 * PI / 16.0);
                let p = angles(a, b);
                let sep = sep_volume_product_2q(&p);
                let all = all_volume_product_2q(&p);
                assert!(sep <= all + 1e-10, "({a},{b})");
                if let Ok(r) = ratio_product_2q(&p) {
                    let swapped = ratio_product_2q(&angles(b, a)).unwrap();
                    let mirrored = ratio_product_2q(&angles(PI - a, PI - b)).unwrap();
                    assert!((r - swapped).abs() < 1e-9);
                    assert!((r - mirrored).abs() < 1e-9);
                    assert!(r >= 1.0 / 9.0);
                }
            }
        }
    }

    #[test]
    fn global_minimum_is_one_half() {
        let (r, p) = minimize_ratio_product_2q(64).unwrap();
        assert!((r - 0.5).abs() < 1e-3, "{r} at {p:?}");
    }

    #[test]
    fn rejects_out_of_range_angles() {
        assert!(ProductAngles::new(-0.1, 0.0).is_err());
        assert!(ProductAngles::new(0.0, 3.2).is_err());
    }
}
