use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Maximum entrywise Hermiticity defect accepted before symmetrization.
pub const HERMITICITY_TOL: f64 = 1e-8;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!(
                "expected {dim} columns in every row of a square matrix"
            )));
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Outer product |v⟩⟨w|.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        assert_eq!(v.len(), w.len());
        Self::from_fn(v.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Dense Hermitian matrix. Construction symmetrizes to `(M + M†)/2` and
/// rejects inputs whose Hermiticity defect exceeds [`HERMITICITY_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CMatrix", into = "CMatrix")]
pub struct HermitianMatrix(CMatrix);

impl TryFrom<CMatrix> for HermitianMatrix {
    type Error = Error;
    fn try_from(m: CMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<HermitianMatrix> for CMatrix {
    fn from(h: HermitianMatrix) -> Self {
        h.0
    }
}

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.dim() == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if !m.is_finite() {
            return Err(Error::InvalidMatrix("non-finite entries".into()));
        }
        let n = m.dim();
        let scale = 1.0 + m.frobenius_norm();
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in i..n {
                defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if defect > HERMITICITY_TOL * scale {
            return Err(Error::InvalidMatrix(format!(
                "not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrize without checking; callers guarantee near-Hermiticity.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let n = m.dim();
        let mut out = m;
        for i in 0..n {
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (out[(i, j)] + out[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Self(out)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::new(CMatrix::from_rows(&rows)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(CMatrix::from_fn(diag.len(), |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(CMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(CMatrix::identity(dim))
    }

    /// Projector |v⟩⟨v| onto a (not necessarily normalized) vector.
    pub fn projector(v: &[C64]) -> Self {
        Self::symmetrized(CMatrix::outer(v, v))
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self(
            CMatrix::from_rows(&[
                vec![ZERO, C64::new(0.0, -1.0)],
                vec![C64::new(0.0, 1.0), ZERO],
            ])
            .unwrap(),
        )
    }

    pub fn pauli_z() -> Self {
        Self::from_diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scaled(C64::new(s, 0.0)))
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> Self {
        Self(self.0.add(&rhs.0))
    }

    pub fn sub(&self, rhs: &HermitianMatrix) -> Self {
        Self(self.0.sub(&rhs.0))
    }

    /// `self + s·1`.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.dim() {
            m[(i, i)] += s;
        }
        Self(m)
    }

    /// Real Hilbert-Schmidt inner product Tr(AB).
    pub fn hs_inner(&self, rhs: &HermitianMatrix) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.0[(i, j)] * rhs.0[(j, i)]).re;
            }
        }
        acc
    }

    /// ⟨v|M|v⟩ (real part; the imaginary part vanishes for Hermitian M).
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let mv = self.0.apply(v);
        v.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Tr(ρ M) for a density matrix ρ.
    pub fn expectation_in(&self, rho: &HermitianMatrix) -> f64 {
        self.hs_inner(rho)
    }

    /// Σ wᵢ Mᵢ for real weights.
    pub fn linear_combination(weights: &[f64], terms: &[HermitianMatrix]) -> Result<Self> {
        if weights.len() != terms.len() || terms.is_empty() {
            return Err(Error::Shape(format!(
                "{} weights for {} matrices",
                weights.len(),
                terms.len()
            )));
        }
        let n = terms[0].dim();
        if terms.iter().any(|t| t.dim() != n) {
            return Err(Error::Shape("matrices differ in dimension".into()));
        }
        let mut data = vec![ZERO; n * n];
        for (w, t) in weights.iter().zip(terms) {
            if *w == 0.0 {
                continue;
            }
            for (d, a) in data.iter_mut().zip(t.0.as_slice()) {
                *d += a * *w;
            }
        }
        Ok(Self(CMatrix { dim: n, data }))
    }

    pub fn max_abs_diff(&self, rhs: &HermitianMatrix) -> f64 {
        self.0.max_abs_diff(&rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn rejects_non_finite() {
        let m = CMatrix::from_rows(&[vec![C64::new(f64::NAN, 0.0)]]).unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn symmetrizes_small_defects() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(1.0, 1e-12), C64::new(0.5, 0.1)],
            vec![C64::new(0.5, -0.1 + 1e-12), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.get(0, 0).im, 0.0);
        assert_eq!(h.get(0, 1), h.get(1, 0).conj());
    }

    #[test]
    fn pauli_algebra() {
        let x = HermitianMatrix::pauli_x();
        let y = HermitianMatrix::pauli_y();
        let z = HermitianMatrix::pauli_z();
        // XY = iZ
        let xy = x.matrix().matmul(y.matrix());
        let iz = z.matrix().scaled(C64::new(0.0, 1.0));
        assert!(xy.max_abs_diff(&iz) < 1e-15);
        assert_eq!(x.hs_inner(&x), 2.0);
        assert_eq!(x.hs_inner(&z), 0.0);
    }
}
