//! Absolutely separable two-qubit spectra and their extremal expectation
//! values.

use crate::analytic::minimize::golden_max;
use crate::error::{Error, Result};
use crate::qlinalg::Spectrum;

use super::seesaw::Sense;

const SLACK: f64 = 1e-12;
const GOLDEN_TOL: f64 = 1e-10;
const PENALTY: f64 = 1e3;

/// `(λ₁ − λ₃)² ≤ 4 λ₂ λ₄` for a descending four-value spectrum.
pub fn is_absolutely_separable(spec: &Spectrum) -> Result<bool> {
    let l = spec.values();
    if l.len() != 4 {
        return Err(Error::Shape(format!("two-qubit spectrum has 4 values, got {}", l.len())));
    }
    Ok((l[0] - l[2]).powi(2) <= 4.0 * l[1] * l[3] + SLACK)
}

/// Spectrum family on the absolutely separable boundary, parameterized by the
/// middle eigenvalues (a, b) of an observable normalized to [0, 1].
pub fn abs_sep_family(a: f64, b: f64) -> [f64; 4] {
    let delta = 1.0 - a - b;
    let gamma = (8.0 + delta * delta).sqrt();
    let l1 = 0.25 * ((8.0 + delta) / gamma - 1.0);
    let l2 = 0.25 * (1.0 - delta / gamma);
    let l4 = 0.25 * (3.0 - (8.0 - delta) / gamma);
    [l1, l2, l2, l4]
}

/// Extreme of `Tr(Aρ)` over absolutely separable two-qubit states, for an
/// observable with eigenvalues `e`.
///
/// Only the spectrum of ρ matters, and for a fixed spectrum the maximum pairs
/// both in descending order. Writing `s = λ₁ − λ₃`, the objective is linear
/// and increasing in s for fixed (λ₂, λ₄), so s sits at the top of its
/// feasible interval; the remaining concave problem in (λ₂, λ₄) is solved by
/// nested golden-section search. The minimum is `−max` for `−e`.
pub fn abs_sep_extremum(e: &[f64], sense: Sense) -> Result<f64> {
    if e.len() != 4 || e.iter().any(|x| !x.is_finite()) {
        return Err(Error::Shape(format!("expected 4 finite eigenvalues, got {e:?}")));
    }
    Ok(match sense {
        Sense::Max => max_abs_sep(e),
        Sense::Min => -max_abs_sep(&e.iter().map(|x| -x).collect::<Vec<_>>()),
    })
}

fn max_abs_sep(e: &[f64]) -> f64 {
    let mut e = e.to_vec();
    e.sort_by(|a, b| b.total_cmp(a));
    // Penalized objective: concave in (λ₂, λ₄), exact where feasible.
    let objective = |l2: f64, l4: f64| {
        let t = 1.0 - l2 - l4;
        let lo = 0f64.max(3.0 * l2 + l4 - 1.0).max(1.0 - 3.0 * l2 - l4);
        let hi = (2.0 * (l2 * l4).max(0.0).sqrt()).min(1.0 - l2 - 3.0 * l4);
        let s = hi;
        let value = 0.5 * (e[0] + e[2]) * t + 0.5 * (e[0] - e[2]) * s + e[1] * l2 + e[3] * l4;
        value - PENALTY * (lo - hi).max(0.0)
    };
    let inner = |l2: f64| golden_max(|l4| objective(l2, l4), 0.0, 0.25, GOLDEN_TOL).1;
    let (l2, _) = golden_max(inner, 0.0, 0.5, GOLDEN_TOL);
    let (l4, _) = golden_max(|l4| objective(l2, l4), 0.0, 0.25, GOLDEN_TOL);
    // Evaluate the unpenalized value at the optimizer.
    let t = 1.0 - l2 - l4;
    let s = (2.0 * (l2 * l4).sqrt()).min(1.0 - l2 - 3.0 * l4);
    let lambda = [(t + s) / 2.0, l2, (t - s) / 2.0, l4];
    lambda.iter().zip(&e).map(|(l, x)| l * x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    #[test]
    fn verdicts() {
        let mixed = Spectrum::state(vec![0.25; 4]).unwrap();
        assert!(is_absolutely_separable(&mixed).unwrap());
        let pure = Spectrum::state(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(!is_absolutely_separable(&pure).unwrap());
        assert!(is_absolutely_separable(&Spectrum::new(vec![1.0, 0.0]).unwrap()).is_err());
    }

    #[test]
    fn family_on_boundary() {
        for (a, b) in [(0.5, 0.5), (0.1, 0.7), (0.0, 1.0), (0.3, 0.3)] {
            let l = abs_sep_family(a, b);
            assert!(((l[0] - l[2]).powi(2) - 4.0 * l[1] * l[3]).abs() < 1e-12);
            assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(l[0] >= l[1] && l[2] >= l[3] && l[3] >= 0.0);
            assert!(is_absolutely_separable(&Spectrum::state(l.to_vec()).unwrap()).unwrap());
        }
    }

    #[test]
    fn half_half_optimum() {
        let e = [1.0, 0.5, 0.5, 0.0];
        let max = abs_sep_extremum(&e, Sense::Max).unwrap();
        let min = abs_sep_extremum(&e, Sense::Min).unwrap();
        assert!((max - FRAC_1_SQRT_2).abs() < 1e-8, "{max}");
        assert!((max - min - (SQRT_2 - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn constant_and_permutation() {
        for sense in [Sense::Max, Sense::Min] {
            assert!((abs_sep_extremum(&[1.0; 4], sense).unwrap() - 1.0).abs() < 1e-12);
        }
        let a = abs_sep_extremum(&[0.3, -1.0, 2.0, 0.7], Sense::Max).unwrap();
        let b = abs_sep_extremum(&[2.0, 0.7, 0.3, -1.0], Sense::Max).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn family_value_is_feasible_lower_bound() {
        // ρ(a,b) is feasible, so its expectation cannot beat the optimum.
        for (a, b) in [(0.2, 0.6), (0.5, 0.5), (0.05, 0.1)] {
            let l = abs_sep_family(a, b);
            let e = [1.0, b, a, 0.0];
            let v: f64 = l.iter().zip(&e).map(|(x, y)| x * y).sum();
            assert!(v <= abs_sep_extremum(&e, Sense::Max).unwrap() + 1e-9);
        }
    }
}
