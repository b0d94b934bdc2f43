use serde::Serialize;

use crate::error::Result;
use crate::qlinalg::{lambda_min, traceless_part, HermitianMatrix, ObservableSet};

/// Relative threshold on the smallest Gram eigenvalue of the kept set.
pub const GRAM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DroppedObservable {
    pub index: usize,
    /// Weights on the kept traceless observables, in kept order.
    pub coefficients: Vec<f64>,
    /// Multiple of the identity (tr A / D) that was removed.
    pub identity_coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ReductionReport {
    /// Input indices of the retained observables.
    pub kept: Vec<usize>,
    pub dropped: Vec<DroppedObservable>,
}

/// Centres every observable and keeps a maximal linearly independent subset,
/// scanning in input order. A candidate is accepted when the Gram matrix of
/// the kept set plus the candidate stays positive definite relative to the
/// largest squared norm.
pub fn reduce_observables(obs: &ObservableSet) -> Result<(ObservableSet, ReductionReport)> {
    let dim = obs.dim() as f64;
    let centred: Vec<HermitianMatrix> = obs.observables().iter().map(traceless_part).collect();
    let scale = centred.iter().map(|a| a.hs_inner(a)).fold(0.0, f64::max);
    let mut report = ReductionReport::default();
    let mut kept: Vec<usize> = Vec::new();
    for (j, a) in centred.iter().enumerate() {
        let mut trial = kept.clone();
        trial.push(j);
        let accept = scale > 0.0 && gram_lambda_min(&centred, &trial)? > GRAM_TOL * scale;
        if accept {
            kept.push(j);
        } else {
            let g: Vec<Vec<f64>> = kept
                .iter()
                .map(|&p| kept.iter().map(|&q| centred[p].hs_inner(&centred[q])).collect())
                .collect();
            let rhs: Vec<f64> = kept.iter().map(|&p| centred[p].hs_inner(a)).collect();
            report.dropped.push(DroppedObservable {
                index: j,
                coefficients: cholesky_solve(&g, &rhs),
                identity_coefficient: obs.get(j).trace() / dim,
            });
        }
    }
    report.kept = kept.clone();
    let reduced = ObservableSet::new(
        obs.profile().clone(),
        kept.iter().map(|&i| centred[i].clone()).collect(),
    )?;
    Ok((reduced, report))
}

fn gram_lambda_min(mats: &[HermitianMatrix], idx: &[usize]) -> Result<f64> {
    let rows: Vec<Vec<f64>> = idx
        .iter()
        .map(|&p| idx.iter().map(|&q| mats[p].hs_inner(&mats[q])).collect())
        .collect();
    if rows.len() == 1 {
        return Ok(rows[0][0]);
    }
    lambda_min(&HermitianMatrix::from_real_rows(&rows)?)
}

/// Solves `g x = b` for symmetric positive definite `g`.
fn cholesky_solve(g: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][i] = (g[i][i] - s).max(f64::MIN_POSITIVE).sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        y[i] = (b[i] - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        x[i] = (y[i] - (i + 1..n).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{kron, DimensionProfile};

    fn xx_zz() -> (HermitianMatrix, HermitianMatrix) {
        let (x, z) = (HermitianMatrix::pauli_x(), HermitianMatrix::pauli_z());
        (kron(&x, &x), kron(&z, &z))
    }

    #[test]
    fn declared_dependence() {
        let (xx, _) = xx_zz();
        let b = xx.scale(2.0).shift(1.0);
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![xx.clone(), b]).unwrap();
        let (r, rep) = reduce_observables(&obs).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(rep.kept, vec![0]);
        assert_eq!(rep.dropped.len(), 1);
        let d = &rep.dropped[0];
        assert_eq!(d.index, 1);
        assert!((d.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((d.identity_coefficient - 1.0).abs() < 1e-12);
        assert!(r.get(0).max_abs_diff(&xx) < 1e-15);
    }

    #[test]
    fn orthogonal_pair_unchanged() {
        let (xx, zz) = xx_zz();
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![xx, zz]).unwrap();
        let (r, rep) = reduce_observables(&obs).unwrap();
        assert_eq!(r.len(), 2);
        assert!(rep.dropped.is_empty());
    }

    #[test]
    fn identity_vanishes() {
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![HermitianMatrix::identity(4)]).unwrap();
        let (r, rep) = reduce_observables(&obs).unwrap();
        assert!(r.is_empty());
        assert_eq!(rep.dropped.len(), 1);
        assert!(rep.dropped[0].coefficients.is_empty());
    }

    #[test]
    fn three_term_dependence() {
        let (xx, zz) = xx_zz();
        let c = xx.scale(0.5).add(&zz.scale(-1.5));
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![xx, zz, c]).unwrap();
        let (_, rep) = reduce_observables(&obs).unwrap();
        let co = &rep.dropped[0].coefficients;
        assert!((co[0] - 0.5).abs() < 1e-12 && (co[1] + 1.5).abs() < 1e-12);
    }
}
