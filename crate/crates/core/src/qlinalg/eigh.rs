//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation. Sweeps stop once
//! the off-diagonal Frobenius norm drops below `1e-13·‖A‖_F`.

use super::matrix::{CMatrix, HermitianMatrix, C64, ONE, ZERO};
use super::profile::Spectrum;
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;
const OFF_DIAGONAL_RTOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) with eigenvectors stored as matching columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub spectrum: Spectrum,
    pub vectors: CMatrix,
}

impl Eigh {
    pub fn values(&self) -> &[f64] {
        self.spectrum.values()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    pub fn max(&self) -> f64 {
        self.spectrum.values()[0]
    }

    pub fn min(&self) -> f64 {
        *self.spectrum.values().last().unwrap()
    }

    pub fn top_vector(&self) -> Vec<C64> {
        self.vector(0)
    }

    pub fn bottom_vector(&self) -> Vec<C64> {
        self.vector(self.vectors.dim() - 1)
    }
}

pub fn eigh(m: &HermitianMatrix) -> Result<Eigh> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::UnsupportedDimension(format!(
            "eigensolver supports dimensions up to {MAX_DIM}, got {n}"
        )));
    }
    if !m.matrix().is_finite() {
        return Err(Error::InvalidMatrix("non-finite entries".into()));
    }
    let mut a = m.matrix().clone();
    let mut v = CMatrix::identity(n);
    let threshold = OFF_DIAGONAL_RTOL * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigh {
        spectrum: Spectrum::from_sorted_unchecked(values),
        vectors,
    })
}

pub fn lambda_max(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(m)?.max())
}

pub fn lambda_min(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(m)?.min())
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    // theta == 0 gives signum 1 which is the correct 45° rotation.
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase = (apq / r).conj(); // e^{-iφ}

    // J = D·G with D = diag(1, e^{-iφ}) on (p, q).
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = phase * (-s);
    let j_qq = phase * c;

    let n = a.dim();
    // A ← A·J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A ← J†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V ← V·J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// Largest eigenvalue and a unit eigenvector of the 2×2 Hermitian matrix
/// `[[a, b], [b̄, d]]`, in closed form.
pub fn eig2_max(a: f64, b: C64, d: f64) -> (f64, [C64; 2]) {
    let half_gap = 0.5 * (a - d);
    let radius = (half_gap * half_gap + b.norm_sqr()).sqrt();
    let value = 0.5 * (a + d) + radius;
    if radius == 0.0 {
        return (value, [ONE, ZERO]);
    }
    // (M - λ)x = 0 ⇒ x ∝ (b, λ - a) or (λ - d, b̄); pick the better conditioned.
    let (x0, x1) = if half_gap >= 0.0 {
        (C64::new(value - d, 0.0), b.conj())
    } else {
        (b, C64::new(value - a, 0.0))
    };
    let norm = (x0.norm_sqr() + x1.norm_sqr()).sqrt();
    (value, [x0 / norm, x1 / norm])
}

/// Smallest eigenvalue and unit eigenvector of `[[a, b], [b̄, d]]`.
pub fn eig2_min(a: f64, b: C64, d: f64) -> (f64, [C64; 2]) {
    let (v, x) = eig2_max(-a, -b, -d);
    (-v, x)
}
