use criterion::{black_box, criterion_group, criterion_main, Criterion};

use weingarten_core::{
    circle_profile, fixed_point_solve, revolve_to_mesh, ArcSign, Branch, CircleSolution, Phi,
    SolverConfig, WeingartenParams,
};

fn bench_fixed_point(c: &mut Criterion) {
    let params = WeingartenParams::new(1.0, 1.0).unwrap();
    let phi = Phi::constant(3.0);
    let cfg = SolverConfig::new(0.5, 512).with_tol(1e-12);
    c.bench_function("fixed_point_solve/sphere_512", |b| {
        b.iter(|| fixed_point_solve(black_box(&params), black_box(&phi), Branch::Plus, &cfg).unwrap())
    });
}

fn bench_circle_profile(c: &mut Criterion) {
    let csol = CircleSolution::new(1.0, -0.5, 0.0, ArcSign::Minus).unwrap();
    c.bench_function("circle_profile/1024", |b| {
        b.iter(|| circle_profile(black_box(&csol), 1024).unwrap())
    });
}

fn bench_revolve(c: &mut Criterion) {
    let params = WeingartenParams::new(1.0, 0.0).unwrap();
    let phi = Phi::constant(1.0);
    let sol = fixed_point_solve(&params, &phi, Branch::Plus, &SolverConfig::new(0.5, 256))
        .unwrap()
        .solution;
    c.bench_function("revolve_to_mesh/256x64", |b| {
        b.iter(|| revolve_to_mesh(black_box(&sol), 64).unwrap())
    });
}

criterion_group!(benches, bench_fixed_point, bench_circle_profile, bench_revolve);
criterion_main!(benches);
