//! Observable sets with known volume ratios.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::product2q::ProductAngles;
use crate::qlinalg::{direct_sum, kron, scalar, C64, DimensionProfile, HermitianMatrix, ObservableSet};

#[derive(Debug, Clone, Serialize)]
pub struct NamedInstance {
    pub name: &'static str,
    pub observables: ObservableSet,
    pub expected_ratio: f64,
    /// Whether the numeric volume engine can handle this instance (k ≤ 3).
    pub numeric: bool,
}

/// |φ⁺⟩⟨φ⁺| with |φ⁺⟩ = (|00⟩ + |11⟩)/√2.
pub fn bell_projector() -> HermitianMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    HermitianMatrix::projector(&[C64::new(h, 0.0), z, z, C64::new(h, 0.0)])
}

/// `0 ⊕ P ⊕ 0` for each of the given single-qubit Paulis.
fn pauli_blocks(paulis: &[HermitianMatrix]) -> ObservableSet {
    let obs = paulis
        .iter()
        .map(|p| direct_sum(&[scalar(0.0), p.clone(), scalar(0.0)]))
        .collect();
    ObservableSet::new(DimensionProfile::qubits(2), obs).expect("4×4 blocks")
}

pub fn pauli_block_pair() -> ObservableSet {
    pauli_blocks(&[HermitianMatrix::pauli_x(), HermitianMatrix::pauli_y()])
}

pub fn pauli_block_triple() -> ObservableSet {
    pauli_blocks(&[
        HermitianMatrix::pauli_x(),
        HermitianMatrix::pauli_y(),
        HermitianMatrix::pauli_z(),
    ])
}

fn products(pairs: &[(HermitianMatrix, HermitianMatrix)]) -> ObservableSet {
    let obs = pairs.iter().map(|(a, b)| kron(a, b)).collect();
    ObservableSet::new(DimensionProfile::qubits(2), obs).expect("two-qubit products")
}

/// {X⊗X, X⊗Y, Z⊗Z}
pub fn xx_xy_zz() -> ObservableSet {
    let (x, y, z) = (
        HermitianMatrix::pauli_x(),
        HermitianMatrix::pauli_y(),
        HermitianMatrix::pauli_z(),
    );
    products(&[(x.clone(), x.clone()), (x, y), (z.clone(), z)])
}

/// {X⊗X, X⊗Y, Z⊗Z, Y⊗Z}
pub fn xx_xy_zz_yz() -> ObservableSet {
    let (x, y, z) = (
        HermitianMatrix::pauli_x(),
        HermitianMatrix::pauli_y(),
        HermitianMatrix::pauli_z(),
    );
    products(&[
        (x.clone(), x.clone()),
        (x, y.clone()),
        (z.clone(), z.clone()),
        (y, z),
    ])
}

pub fn named_instances() -> Vec<NamedInstance> {
    let bell = ObservableSet::new(DimensionProfile::qubits(2), vec![bell_projector()])
        .expect("4×4 projector");
    let (sep3, all3, sep4, all4) = solids_of_revolution();
    vec![
        NamedInstance {
            name: "bell-projector",
            observables: bell,
            expected_ratio: 0.5,
            numeric: true,
        },
        NamedInstance {
            name: "pauli-block-pair",
            observables: pauli_block_pair(),
            expected_ratio: 0.25,
            numeric: true,
        },
        NamedInstance {
            name: "pauli-block-triple",
            observables: pauli_block_triple(),
            expected_ratio: 0.2,
            numeric: true,
        },
        NamedInstance {
            name: "xx-zz",
            observables: ProductAngles::new(FRAC_PI_2, FRAC_PI_2)
                .expect("valid angles")
                .observables(),
            expected_ratio: 0.5,
            numeric: true,
        },
        NamedInstance {
            name: "xx-xy-zz",
            observables: xx_xy_zz(),
            expected_ratio: sep3 / all3,
            numeric: true,
        },
        NamedInstance {
            name: "xx-xy-zz-yz",
            observables: xx_xy_zz_yz(),
            expected_ratio: sep4 / all4,
            numeric: false,
        },
    ]
}

/// Volumes `(sep₃, all₃, sep₄, all₄)` of the rotationally symmetric
/// instances. Three observables: a double cone of radius 1 and total height
/// 2 inside a cylinder of the same size. Four observables: the product of
/// two unit discs, `∫₀¹ 2πR·π(1−R)² dR` against `π·π`.
pub fn solids_of_revolution() -> (f64, f64, f64, f64) {
    let all3 = PI * 2.0;
    let sep3 = 2.0 * PI / 3.0;
    let all4 = PI * PI;
    // ∫₀¹ R(1−R)² dR = 1/12
    let sep4 = 2.0 * PI * PI / 12.0;
    (sep3, all3, sep4, all4)
}

/// `(ratio with three observables, ratio with four)`.
pub fn solids_of_revolution_ratios() -> (f64, f64) {
    let (s3, a3, s4, a4) = solids_of_revolution();
    (s3 / a3, s4 / a4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::quadrature::integrate;
    use crate::qlinalg::eigh;

    #[test]
    fn revolution_ratios_are_exact() {
        let (r3, r4) = solids_of_revolution_ratios();
        assert_eq!(r3, 1.0 / 3.0);
        assert!((r4 - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn four_observable_numerator_by_quadrature() {
        // ∫₀¹ dR ∫₀^{2π} dφ R ∫₀^{1−R} dr ∫₀^{2π} dψ r
        let inner = |big_r: f64| {
            integrate(|r| 2.0 * PI * r, 0.0, 1.0 - big_r, 1e-14).unwrap().value
        };
        let v = integrate(|big_r| 2.0 * PI * big_r * inner(big_r), 0.0, 1.0, 1e-14)
            .unwrap()
            .value;
        assert!((v - PI * PI / 6.0).abs() < 1e-10);
        let (_, _, sep4, _) = solids_of_revolution();
        assert!((v - sep4).abs() < 1e-10);
    }

    #[test]
    fn instance_shapes() {
        let all = named_instances();
        assert_eq!(all.len(), 6);
        for inst in &all {
            assert_eq!(inst.observables.dim(), 4);
            assert_eq!(inst.numeric, inst.observables.len() <= 3);
        }
        let b = bell_projector();
        let e = eigh(&b).unwrap();
        assert!((e.max() - 1.0).abs() < 1e-14 && e.min().abs() < 1e-14);
    }

    #[test]
    fn pauli_blocks_sit_in_middle() {
        let p = pauli_block_pair();
        assert_eq!(p.get(0).get(1, 2), C64::new(1.0, 0.0));
        assert_eq!(p.get(1).get(1, 2), C64::new(0.0, -1.0));
    }
}
