//! Tensor-product constructions on Hermitian matrices.
//!
//! Indices follow the row-major tensor convention: for a profile
//! (d₁,…,dₙ) the basis vector |i₁…iₙ⟩ sits at Σ iₛ·strideₛ.

use super::matrix::{CMatrix, HermitianMatrix, C64, ZERO};
use super::profile::{norm, DimensionProfile};
use crate::error::{Error, Result};

/// A ⊗ B with `(A⊗B)[(a i),(a' j)] = A[a][a']·B[i][j]`.
pub fn kron(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let m = CMatrix::from_fn(na * nb, |r, c| {
        a.get(r / nb, c / nb) * b.get(r % nb, c % nb)
    });
    HermitianMatrix::symmetrized(m)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[HermitianMatrix]) -> Result<HermitianMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Shape("empty factor list".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| kron(&acc, f)))
}

/// Block-diagonal assembly A₁ ⊕ A₂ ⊕ ….
pub fn direct_sum(blocks: &[HermitianMatrix]) -> HermitianMatrix {
    let dim: usize = blocks.iter().map(HermitianMatrix::dim).sum();
    let mut m = CMatrix::zeros(dim);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                m[(offset + i, offset + j)] = b.get(i, j);
            }
        }
        offset += b.dim();
    }
    HermitianMatrix::symmetrized(m)
}

/// The 1×1 block holding the real scalar `x`, for use with [`direct_sum`].
pub fn scalar(x: f64) -> HermitianMatrix {
    HermitianMatrix::from_diagonal(&[x])
}

/// Contracts tensor factor `site` of `x` against the local operator `p`:
/// `Y[i][j] = Σ_{a,a'} p[a][a'] · X[(a' at site, i)][(a at site, j)]`.
///
/// With `p = |α⟩⟨α|` this is `(⟨α|⊗1) X (|α⟩⊗1)`; with a density matrix it
/// is `Tr_site[(p ⊗ 1) X]`.
pub fn partial_contract(
    x: &HermitianMatrix,
    profile: &DimensionProfile,
    site: usize,
    p: &CMatrix,
) -> Result<HermitianMatrix> {
    profile.check_matrix(x)?;
    let rest = profile.without(site)?;
    let d = profile.local_dims()[site];
    if p.dim() != d {
        return Err(Error::Shape(format!(
            "local operator has dimension {}, site {site} has {d}",
            p.dim()
        )));
    }
    let full = profile.strides();
    let n = rest.total_dim();
    let embed = embedding(profile, site);
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        let bi = embed[i];
        for j in 0..n {
            let bj = embed[j];
            let mut acc = ZERO;
            for a in 0..d {
                for ap in 0..d {
                    let w = p[(a, ap)];
                    if w != ZERO {
                        acc += w * x.get(bi + ap * full[site], bj + a * full[site]);
                    }
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(HermitianMatrix::symmetrized(out))
}

/// `(⟨α|⊗1) X (|α⟩⊗1)` acting on the complementary factors.
pub fn conditional_operator(
    x: &HermitianMatrix,
    alpha: &[C64],
    profile: &DimensionProfile,
    site: usize,
) -> Result<HermitianMatrix> {
    let d = *profile
        .local_dims()
        .get(site)
        .ok_or_else(|| Error::Shape(format!("site {site} out of range")))?;
    if alpha.len() != d {
        return Err(Error::Shape(format!(
            "vector of length {} for local dimension {d}",
            alpha.len()
        )));
    }
    let p = CMatrix::outer(alpha, alpha);
    partial_contract(x, profile, site, &p)
}

/// Contract every site except `keep` against the given local vectors,
/// leaving an operator on factor `keep` alone.
pub fn reduce_to_site(
    x: &HermitianMatrix,
    profile: &DimensionProfile,
    factors: &[Vec<C64>],
    keep: usize,
) -> Result<HermitianMatrix> {
    if factors.len() != profile.parties() {
        return Err(Error::Shape("one factor per site required".into()));
    }
    let mut op = x.clone();
    let mut prof = profile.clone();
    // Contract from the last site down so remaining indices stay valid.
    for site in (0..profile.parties()).rev() {
        if site == keep {
            continue;
        }
        op = conditional_operator(&op, &factors[site], &prof, site)?;
        prof = prof.without(site)?;
    }
    Ok(op)
}

/// `A − (Tr A / D)·1`.
pub fn traceless_part(a: &HermitianMatrix) -> HermitianMatrix {
    a.shift(-a.trace() / a.dim() as f64)
}

/// Transposes tensor factor `site` of ρ. Involutive.
pub fn partial_transpose(
    rho: &HermitianMatrix,
    profile: &DimensionProfile,
    site: usize,
) -> Result<HermitianMatrix> {
    profile.check_matrix(rho)?;
    if site >= profile.parties() {
        return Err(Error::Shape(format!("site {site} out of range")));
    }
    let d = profile.local_dims()[site];
    let stride = profile.strides()[site];
    let n = rho.dim();
    let m = CMatrix::from_fn(n, |r, c| {
        let ra = (r / stride) % d;
        let ca = (c / stride) % d;
        let r2 = r - ra * stride + ca * stride;
        let c2 = c - ca * stride + ra * stride;
        rho.get(r2, c2)
    });
    Ok(HermitianMatrix::symmetrized(m))
}

/// Generalized Gell-Mann matrices normalized to `Tr(GᵢGⱼ) = δᵢⱼ`:
/// symmetric, antisymmetric, then diagonal generators.
pub fn gellmann_basis(dim: usize) -> Result<Vec<HermitianMatrix>> {
    if dim < 2 {
        return Err(Error::Domain(format!("Gell-Mann basis needs D ≥ 2, got {dim}")));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(dim * dim - 1);
    for j in 0..dim {
        for k in (j + 1)..dim {
            let mut s = CMatrix::zeros(dim);
            s[(j, k)] = C64::new(h, 0.0);
            s[(k, j)] = C64::new(h, 0.0);
            out.push(HermitianMatrix::symmetrized(s));
            let mut a = CMatrix::zeros(dim);
            a[(j, k)] = C64::new(0.0, -h);
            a[(k, j)] = C64::new(0.0, h);
            out.push(HermitianMatrix::symmetrized(a));
        }
    }
    for l in 1..dim {
        let c = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..dim)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => -(l as f64) * c,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        out.push(HermitianMatrix::from_diagonal(&diag));
    }
    Ok(out)
}

/// Maps an index of the reduced space (site removed) to the full index with
/// that site's sub-index set to zero.
fn embedding(profile: &DimensionProfile, site: usize) -> Vec<usize> {
    let dims = profile.local_dims();
    let strides = profile.strides();
    let rest: Vec<usize> = (0..dims.len()).filter(|&s| s != site).collect();
    let n: usize = rest.iter().map(|&s| dims[s]).product();
    (0..n)
        .map(|mut idx| {
            let mut full = 0;
            for &s in rest.iter().rev() {
                full += (idx % dims[s]) * strides[s];
                idx /= dims[s];
            }
            full
        })
        .collect()
}

/// Unit vector along `v`; errors on the zero vector.
pub fn normalized(v: &[C64]) -> Result<Vec<C64>> {
    let n = norm(v);
    if n == 0.0 {
        return Err(Error::InvalidMatrix("cannot normalize the zero vector".into()));
    }
    Ok(v.iter().map(|x| x / n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::eigh::eigh;

    fn x() -> HermitianMatrix {
        HermitianMatrix::pauli_x()
    }
    fn z() -> HermitianMatrix {
        HermitianMatrix::pauli_z()
    }
    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_examples() {
        let xx = kron(&x(), &x());
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx.get(i, j), c(expect));
            }
        }
        let ii = kron(&HermitianMatrix::identity(2), &HermitianMatrix::identity(2));
        assert_eq!(ii, HermitianMatrix::identity(4));
        assert_eq!(kron(&z(), &z()), HermitianMatrix::from_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn direct_sum_examples() {
        let a1 = direct_sum(&[scalar(0.0), x(), scalar(0.0)]);
        assert_eq!(a1.dim(), 4);
        assert_eq!(a1.get(1, 2), c(1.0));
        assert_eq!(a1.get(2, 1), c(1.0));
        assert_eq!(a1.get(0, 3), c(0.0));
        let a3 = direct_sum(&[scalar(0.0), z(), scalar(0.0)]);
        assert_eq!(a3, HermitianMatrix::from_diagonal(&[0.0, 1.0, -1.0, 0.0]));
        assert_eq!(direct_sum(&[x()]), x());
    }

    #[test]
    fn conditional_operator_examples() {
        let p = DimensionProfile::qubits(2);
        let xx = kron(&x(), &x());
        let zero = [c(1.0), c(0.0)];
        let r = conditional_operator(&xx, &zero, &p, 0).unwrap();
        assert_eq!(r, HermitianMatrix::zeros(2));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [c(h), c(h)];
        let r = conditional_operator(&xx, &plus, &p, 0).unwrap();
        assert!(r.max_abs_diff(&x()) < 1e-15);
        // Z⊗Z with cos t|0⟩ + sin t|1⟩ gives cos(2t)·Z (symbolic expansion).
        let zz = kron(&z(), &z());
        for t in [0.0, 0.3, 1.1, 2.5] {
            let alpha = [c(f64::cos(t)), c(f64::sin(t))];
            let r = conditional_operator(&zz, &alpha, &p, 0).unwrap();
            assert!(r.max_abs_diff(&z().scale((2.0 * t).cos())) < 1e-14);
        }
    }

    #[test]
    fn conditional_operator_on_second_site() {
        let p = DimensionProfile::qubits(2);
        let xz = kron(&x(), &z());
        let zero = [c(1.0), c(0.0)];
        let r = conditional_operator(&xz, &zero, &p, 1).unwrap();
        assert!(r.max_abs_diff(&x()) < 1e-15);
    }

    #[test]
    fn conditional_operator_shape_errors() {
        let p = DimensionProfile::qubits(2);
        let xx = kron(&x(), &x());
        assert!(matches!(
            conditional_operator(&xx, &[c(1.0)], &p, 0),
            Err(Error::Shape(_))
        ));
        let p3 = DimensionProfile::new(vec![3, 3]).unwrap();
        assert!(conditional_operator(&xx, &[c(1.0), c(0.0), c(0.0)], &p3, 0).is_err());
    }

    #[test]
    fn reduce_to_site_matches_expectation() {
        let p = DimensionProfile::new(vec![2, 3, 2]).unwrap();
        let mut rng = crate::rng::task_rng(3, 0);
        let m = crate::qlinalg::random::random_hermitian(12, &mut rng);
        let factors: Vec<Vec<C64>> = p
            .local_dims()
            .iter()
            .map(|&d| crate::qlinalg::random::random_unit_vector(d, &mut rng))
            .collect();
        let state = crate::qlinalg::ProductState::new(factors.clone()).unwrap();
        let direct = state.expectation(&m);
        for keep in 0..3 {
            let r = reduce_to_site(&m, &p, &factors, keep).unwrap();
            assert!((r.expectation(&factors[keep]) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn traceless_examples() {
        assert_eq!(traceless_part(&HermitianMatrix::identity(4)), HermitianMatrix::zeros(4));
        let xx = kron(&x(), &x());
        assert_eq!(traceless_part(&xx), xx);
        let d = traceless_part(&HermitianMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]));
        assert!(d
            .max_abs_diff(&HermitianMatrix::from_diagonal(&[0.75, -0.25, -0.25, -0.25]))
            < 1e-15);
    }

    #[test]
    fn partial_transpose_examples() {
        let p = DimensionProfile::qubits(2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [c(h), c(0.0), c(0.0), c(h)];
        let bell = HermitianMatrix::projector(&phi);
        let pt = partial_transpose(&bell, &p, 1).unwrap();
        let e = eigh(&pt).unwrap();
        assert!((e.min() + 0.5).abs() < 1e-12);
        assert_eq!(partial_transpose(&pt, &p, 1).unwrap(), bell);

        let y = HermitianMatrix::pauli_y();
        let rho_a = HermitianMatrix::identity(2).add(&x().scale(0.3)).scale(0.5);
        let rho_b = HermitianMatrix::identity(2).add(&y.scale(0.4)).scale(0.5);
        let prod = kron(&rho_a, &rho_b);
        let pt = partial_transpose(&prod, &p, 1).unwrap();
        let expected = kron(&rho_a, &HermitianMatrix::new(rho_b.matrix().transpose()).unwrap());
        assert!(pt.max_abs_diff(&expected) < 1e-15);
        assert!(eigh(&pt).unwrap().min() > -1e-12);
        assert!(partial_transpose(&prod, &DimensionProfile::new(vec![3, 3]).unwrap(), 0).is_err());
    }

    #[test]
    fn gellmann_orthonormal() {
        let g2 = gellmann_basis(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(g2[0].max_abs_diff(&x().scale(h)) < 1e-15);
        assert!(g2[1].max_abs_diff(&HermitianMatrix::pauli_y().scale(h)) < 1e-15);
        assert!(g2[2].max_abs_diff(&z().scale(h)) < 1e-15);
        for d in 2..6 {
            let g = gellmann_basis(d).unwrap();
            assert_eq!(g.len(), d * d - 1);
            for (i, a) in g.iter().enumerate() {
                assert!(a.trace().abs() < 1e-12);
                for (j, b) in g.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.hs_inner(b) - expect).abs() < 1e-12);
                }
            }
        }
        assert!(gellmann_basis(1).is_err());
    }
}
