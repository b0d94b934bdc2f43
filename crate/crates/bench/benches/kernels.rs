use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use numrange::analytic::{pauli_block_triple, ratio_product_2q, ProductAngles};
use numrange::qlinalg::random::random_hermitian;
use numrange::qlinalg::{eigh, DimensionProfile};
use numrange::rangegeom::{build_body, hull_3d, AllStatesOracle};
use numrange::rng::task_rng;
use numrange::septools::{certified_sep_support_2qubit, seesaw_product_extremum, SeesawConfig, Sense};

fn linalg(c: &mut Criterion) {
    let mut rng = task_rng(0, 0);
    let a4 = random_hermitian(4, &mut rng);
    let a9 = random_hermitian(9, &mut rng);
    c.bench_function("eigh 4x4", |b| b.iter(|| eigh(black_box(&a4)).unwrap()));
    c.bench_function("eigh 9x9", |b| b.iter(|| eigh(black_box(&a9)).unwrap()));
}

fn separable(c: &mut Criterion) {
    let x = random_hermitian(4, &mut task_rng(0, 1));
    for g in [16, 32, 64] {
        c.bench_function(&format!("certified support g={g}"), |b| {
            b.iter(|| certified_sep_support_2qubit(black_box(&x), g).unwrap())
        });
    }
    let y = random_hermitian(9, &mut task_rng(0, 2));
    let cfg = SeesawConfig {
        restarts: 16,
        ..SeesawConfig::default()
    };
    let profile = DimensionProfile::bipartite(3);
    c.bench_function("seesaw 3x3, 16 restarts", |b| {
        b.iter(|| seesaw_product_extremum(black_box(&y), &profile, Sense::Min, &cfg).unwrap())
    });
}

fn geometry(c: &mut Criterion) {
    let obs = pauli_block_triple();
    c.bench_function("joint range body, 800 directions", |b| {
        b.iter(|| build_body(black_box(&obs), &AllStatesOracle, 800).unwrap())
    });
    let body = build_body(&obs, &AllStatesOracle, 800).unwrap();
    let pts: Vec<[f64; 3]> = body.inner_vertices().iter().map(|v| [v[0], v[1], v[2]]).collect();
    c.bench_function("hull_3d, 800 points", |b| b.iter(|| hull_3d(black_box(&pts)).unwrap()));
    let angles = ProductAngles::new(1.0, 2.0).unwrap();
    c.bench_function("product-pair ratio", |b| b.iter(|| ratio_product_2q(black_box(&angles)).unwrap()));
}

criterion_group!(benches, linalg, separable, geometry);
criterion_main!(benches);
