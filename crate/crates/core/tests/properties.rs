//! Randomized properties of the range pipeline.

use proptest::prelude::*;

use numrange::analytic::quadrature::integrate;
use numrange::analytic::{elliptic_e, elliptic_k, hoeffding_half_width};
use numrange::qlinalg::random::{random_hermitian, random_unit_vector, simulate_shots};
use numrange::qlinalg::{lambda_max, DimensionProfile, HermitianMatrix, ObservableSet, ProductState};
use numrange::rangegeom::{build_body, direction_grid, AllStatesOracle, SupportOracle, MEMBERSHIP_TOL};
use numrange::rng::task_rng;
use numrange::septools::{certified_sep_support_2qubit, seesaw_from, SeesawConfig, SepOracle, Sense};
use numrange::{volume_ratio, RatioConfig};

fn random_set(seed: u64, k: usize, profile: DimensionProfile) -> ObservableSet {
    let mut rng = task_rng(seed, 0);
    let mats = (0..k).map(|_| random_hermitian(profile.total_dim(), &mut rng)).collect();
    ObservableSet::new(profile, mats).unwrap()
}

fn quick_sep() -> SepOracle {
    SepOracle {
        seesaw: SeesawConfig {
            restarts: 8,
            ..SeesawConfig::default()
        },
        grid_per_axis: 16,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn inner_hull_lies_inside_outer_polytope(seed in any::<u64>(), k in 1usize..=3) {
        let obs = random_set(seed, k, DimensionProfile::qubits(2));
        for body in [
            build_body(&obs, &AllStatesOracle, 120).unwrap(),
            build_body(&obs, &quick_sep(), 120).unwrap(),
        ] {
            for v in body.inner_vertices() {
                for h in body.outer_halfspaces() {
                    prop_assert!(h.contains(v, MEMBERSHIP_TOL));
                }
            }
        }
    }

    #[test]
    fn separable_support_below_full_support(seed in any::<u64>()) {
        let obs = random_set(seed, 3, DimensionProfile::qubits(2));
        let sep = quick_sep();
        for u in direction_grid(3, 40).unwrap() {
            let s = sep.support(&obs, &u).unwrap();
            let a = AllStatesOracle.support(&obs, &u).unwrap();
            prop_assert!(s.support_value <= a.support_value + 1e-9);
        }
    }

    #[test]
    fn ratio_is_affine_invariant(seed in any::<u64>(), a in 0.3f64..2.0, b in -1.0f64..1.0, c in -2.0f64..2.0) {
        let obs = random_set(seed, 2, DimensionProfile::qubits(2));
        let image = obs.affine_image(&[vec![a, b], vec![0.5, 1.0]], &[c, -c]).unwrap();
        let cfg = RatioConfig { directions: 360, mc_samples: 1000, sep: quick_sep(), ..Default::default() };
        let r0 = volume_ratio(&obs, &cfg).unwrap().report.ratio;
        let r1 = volume_ratio(&image, &cfg).unwrap().report.ratio;
        prop_assert!((r0.estimate - r1.estimate).abs() < 0.02, "{r0:?} vs {r1:?}");
        // Both brackets enclose the same true ratio.
        prop_assert!(r0.lower <= r1.upper + 1e-9 && r1.lower <= r0.upper + 1e-9);
    }

    #[test]
    fn seesaw_history_is_monotone(seed in any::<u64>(), sense in prop_oneof![Just(Sense::Max), Just(Sense::Min)]) {
        let profile = DimensionProfile::bipartite(3);
        let mut rng = task_rng(seed, 1);
        let x = random_hermitian(9, &mut rng);
        let start = ProductState::new(vec![random_unit_vector(3, &mut rng), random_unit_vector(3, &mut rng)]).unwrap();
        let run = seesaw_from(&x, &profile, sense, start, 200, 1e-13).unwrap();
        for w in run.history.windows(2) {
            let step = match sense { Sense::Max => w[1] - w[0], Sense::Min => w[0] - w[1] };
            prop_assert!(step >= -1e-12);
        }
    }

    #[test]
    fn certified_gap_shrinks_under_refinement(seed in any::<u64>()) {
        let x = random_hermitian(4, &mut task_rng(seed, 2));
        let mut prev: Option<numrange::CertifiedBound> = None;
        for g in [8, 16, 32, 64] {
            let b = certified_sep_support_2qubit(&x, g).unwrap();
            prop_assert!(b.heuristic_value <= b.certified_upper + 1e-12);
            prop_assert!(b.certified_upper <= lambda_max(&x).unwrap() + 1e-12);
            if let Some(p) = prev {
                prop_assert!(b.certified_upper <= p.certified_upper + 1e-12);
                prop_assert!(b.heuristic_value >= p.heuristic_value - 1e-12);
            }
            prev = Some(b);
        }
    }

    #[test]
    fn elliptic_integrals_match_quadrature(m in -20.0f64..0.99) {
        let k = integrate(|t| (1.0 - m * t.sin().powi(2)).powf(-0.5), 0.0, std::f64::consts::FRAC_PI_2, 1e-14).unwrap();
        let e = integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, std::f64::consts::FRAC_PI_2, 1e-14).unwrap();
        prop_assert!((elliptic_k(m).unwrap() - k.value).abs() <= 1e-10 * k.value.max(1.0));
        prop_assert!((elliptic_e(m).unwrap() - e.value).abs() <= 1e-10 * e.value.max(1.0));
    }
}

/// Empirical coverage of the equal-split Hoeffding rectangle.
#[test]
fn hoeffding_rectangle_covers_truth() {
    let (alpha, m, runs) = (0.2, 50, 1000);
    let x = HermitianMatrix::pauli_x();
    let z = HermitianMatrix::pauli_z();
    // Unit-width observables (σ + 1)/2 on the state |0⟩.
    let obs = [x.shift(1.0).scale(0.5), z.shift(1.0).scale(0.5)];
    let rho = HermitianMatrix::projector(&[numrange::C64::new(1.0, 0.0), numrange::C64::new(0.0, 0.0)]);
    let truth = [0.5, 1.0];
    let t = hoeffding_half_width(m, 2, alpha).unwrap();
    let covered = (0..runs)
        .filter(|&r| {
            obs.iter().zip(truth).enumerate().all(|(j, (a, mu))| {
                let shots = simulate_shots(a, &rho, m, &mut task_rng(r, j as u64)).unwrap();
                let mean = shots.iter().sum::<f64>() / m as f64;
                (mean - mu).abs() <= t
            })
        })
        .count();
    let p = 1.0 - alpha;
    let sigma = (p * (1.0 - p) / runs as f64).sqrt();
    assert!(covered as f64 / runs as f64 >= p - 3.0 * sigma, "coverage {covered}/{runs}");
}
