//! Random matrix and state samplers.
//!
//! All samplers take an explicit generator so that parallel callers can hand
//! each task its own stream (see [`crate::rng::task_rng`]).

use rand::Rng;
use rand::distr::weighted::WeightedIndex;
use rand_distr::{Distribution, StandardNormal};

use super::eigh::eigh;
use super::matrix::{CMatrix, HermitianMatrix, C64};
use crate::error::{Error, Result};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Real symmetric GOE matrix with density ∝ exp(−Tr A²/2): diagonal entries
/// have variance 1, off-diagonal entries variance 1/2.
pub fn sample_goe<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let off = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(normal(rng), 0.0);
        for j in (i + 1)..dim {
            let x = C64::new(off * normal(rng), 0.0);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    HermitianMatrix::symmetrized(m)
}

/// Density matrix GG†/Tr(GG†) with G complex Ginibre, i.e. distributed
/// according to the flat Hilbert-Schmidt measure.
pub fn sample_hs_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let g = CMatrix::from_fn(dim, |_, _| C64::new(normal(rng), normal(rng)));
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    HermitianMatrix::symmetrized(w.scaled(C64::new(1.0 / tr, 0.0)))
}

/// Hermitian matrix with i.i.d. complex Gaussian entries above the diagonal.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let g = CMatrix::from_fn(dim, |_, _| C64::new(normal(rng), normal(rng)));
    HermitianMatrix::symmetrized(g.add(&g.adjoint()).scaled(C64::new(0.5, 0.0)))
}

/// Haar-random unit vector in C^dim.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| C64::new(normal(rng), normal(rng))).collect();
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-300 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Uniform unit vector in R^k.
pub fn random_real_unit<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-300 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Draws `shots` projective measurement outcomes of `obs` on state `rho`.
/// Each outcome is an eigenvalue of `obs`, sampled with Born probabilities.
pub fn simulate_shots<R: Rng + ?Sized>(
    obs: &HermitianMatrix,
    rho: &HermitianMatrix,
    shots: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if obs.dim() != rho.dim() {
        return Err(Error::Shape("observable and state differ in dimension".into()));
    }
    let e = eigh(obs)?;
    let probs: Vec<f64> = (0..obs.dim())
        .map(|i| rho.expectation(&e.vector(i)).max(0.0))
        .collect();
    let dist = WeightedIndex::new(&probs)
        .map_err(|err| Error::Domain(format!("invalid outcome distribution: {err}")))?;
    Ok((0..shots).map(|_| e.values()[dist.sample(rng)]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;

    #[test]
    fn goe_is_deterministic_and_real_symmetric() {
        let a = sample_goe(4, &mut task_rng(1, 0));
        let b = sample_goe(4, &mut task_rng(1, 0));
        assert_eq!(a, b);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.get(i, j).im, 0.0);
                assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
    }

    #[test]
    fn goe_entry_variances() {
        // Sample-moment oracle: diagonal variance 1, off-diagonal 1/2.
        let n = 10_000;
        let mut rng = task_rng(2, 0);
        let (mut sd, mut so) = (0.0, 0.0);
        for _ in 0..n {
            let m = sample_goe(4, &mut rng);
            sd += m.get(0, 0).re.powi(2);
            so += m.get(0, 1).re.powi(2);
        }
        let (vd, vo) = (sd / n as f64, so / n as f64);
        // Var of the sample second moment is 2σ⁴/n.
        assert!((vd - 1.0).abs() < 3.0 * (2.0f64 / n as f64).sqrt(), "{vd}");
        assert!((vo - 0.5).abs() < 3.0 * 0.5 * (2.0f64 / n as f64).sqrt(), "{vo}");
    }

    #[test]
    fn hs_states_are_states() {
        let mut rng = task_rng(3, 0);
        for _ in 0..50 {
            let rho = sample_hs_state(4, &mut rng);
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!(eigh(&rho).unwrap().min() >= -1e-12);
        }
    }

    #[test]
    fn hs_mean_is_maximally_mixed() {
        let n = 4000;
        let mut rng = task_rng(4, 0);
        let mut acc = HermitianMatrix::zeros(2);
        for _ in 0..n {
            acc = acc.add(&sample_hs_state(2, &mut rng));
        }
        let mean = acc.scale(1.0 / n as f64);
        // Entry standard deviation of a D=2 HS state is below 0.25.
        let tol = 3.0 * 0.25 / (n as f64).sqrt();
        assert!((mean.get(0, 0).re - 0.5).abs() < tol);
        assert!(mean.get(0, 1).norm() < tol);
    }

    #[test]
    fn shots_follow_born_rule() {
        let mut rng = task_rng(5, 0);
        let rho = HermitianMatrix::from_diagonal(&[0.8, 0.2]);
        let shots = simulate_shots(&HermitianMatrix::pauli_z(), &rho, 20_000, &mut rng).unwrap();
        let mean = shots.iter().sum::<f64>() / shots.len() as f64;
        assert!((mean - 0.6).abs() < 0.02);
        assert!(shots.iter().all(|&s| s == 1.0 || s == -1.0));
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = task_rng(6, 0);
        let v = random_unit_vector(3, &mut rng);
        let n: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
        let r = random_real_unit(3, &mut rng);
        assert!((r.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-14);
    }
}
