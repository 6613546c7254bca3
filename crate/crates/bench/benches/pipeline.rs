use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hhd_lyap::{flow, harmonic, hhd, lyapunov, GridSpec};
use hhd_lyap_bench::{giesl_field, hopf_field};

fn bench_decompose(c: &mut Criterion) {
    let field = giesl_field();
    c.bench_function("decompose_cubic", |b| {
        b.iter(|| hhd::decompose(black_box(&field)).unwrap())
    });
}

fn bench_certify(c: &mut Criterion) {
    let field = giesl_field();
    let d = hhd::decompose(&field).unwrap();
    c.bench_function("theorem2_certify", |b| {
        b.iter(|| lyapunov::theorem2_certify(black_box(&d)).unwrap())
    });
}

fn bench_basin(c: &mut Criterion) {
    let field = giesl_field();
    let v = hhd::decompose(&field).unwrap().potential().clone();
    let grid = GridSpec::square(-1.0, 1.0, 2, 200);
    c.bench_function("basin_estimate_200", |b| {
        b.iter(|| lyapunov::basin_estimate(black_box(&v), &field, &grid, 0.01).unwrap())
    });
}

fn bench_harmonic_basis(c: &mut Criterion) {
    c.bench_function("harmonic_basis_3_8", |b| {
        b.iter(|| harmonic::harmonic_basis(black_box(3), black_box(8)))
    });
}

fn bench_integrate(c: &mut Criterion) {
    let field = hopf_field();
    c.bench_function("rk4_hopf_t5", |b| {
        b.iter(|| flow::integrate(black_box(&field), &[0.1, 0.0], 5.0, 1e-3).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_decompose, bench_certify, bench_basin, bench_harmonic_basis, bench_integrate
}
criterion_main!(benches);
