use criterion::{criterion_group, criterion_main, Criterion};
use euler3b::{
    integrate, minimize_f1, phi_eps, reconstruct_configuration, solve_lambda0, CollinearGeometry,
    EnergyParams, FourierLoop, MassTriple, MinimizeOptions,
};
use std::f64::consts::PI;
use std::hint::black_box;

fn bench_lambda0(c: &mut Criterion) {
    let masses = MassTriple::new(1.0, 2.0, 3.0).unwrap();
    c.bench_function("solve_lambda0 (1,2,3)", |b| {
        b.iter(|| solve_lambda0(black_box(&masses)).unwrap())
    });
}

fn bench_phi_eps(c: &mut Criterion) {
    let masses = MassTriple::equal();
    let geom = CollinearGeometry::derive(&masses, 0.5).unwrap();
    let params = EnergyParams::new(-1.25, 1e-3).unwrap();
    let lp = euler3b::random_loop(16, 5, 1.0, 2.0 * PI).scaled(2.0);
    c.bench_function("phi_eps value+gradient K=16 M=256", |b| {
        b.iter(|| phi_eps(black_box(&lp), &geom, &params, 256).unwrap())
    });
}

fn bench_minimize(c: &mut Criterion) {
    let masses = MassTriple::equal();
    let geom = CollinearGeometry::derive(&masses, 0.5).unwrap();
    let start = FourierLoop::circle_xy(2.0 * PI, 1.5, 8);
    let opts = MinimizeOptions {
        tol: 1e-6,
        ..Default::default()
    };
    c.bench_function("minimize_f1 from radius 1.5, K=8", |b| {
        b.iter(|| minimize_f1(black_box(&start), &geom, &opts).unwrap())
    });
}

fn bench_integrate(c: &mut Criterion) {
    let masses = MassTriple::equal();
    let geom = CollinearGeometry::derive(&masses, 0.5).unwrap();
    let omega = 10f64.sqrt();
    let lp = FourierLoop::circle_xy(2.0 * PI / omega, 1.0, 1);
    let initial = reconstruct_configuration(&geom, lp.evaluate(0.0), lp.derivative(0.0));
    let params = EnergyParams::unperturbed(0.0);
    c.bench_function("rk4 one period, 1024 steps", |b| {
        b.iter(|| integrate(black_box(&initial), &masses, &params, 1024, lp.period()).unwrap())
    });
}

criterion_group!(
    benches,
    bench_lambda0,
    bench_phi_eps,
    bench_minimize,
    bench_integrate
);
criterion_main!(benches);
