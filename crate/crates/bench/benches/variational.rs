use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use jetvar::jet_calculus::{euler_lagrange, helmholtz, JetContext};
use jetvar_bench::{dirichlet_lagrangian, quadratic_field};

fn euler_lagrange_and_helmholtz(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler_lagrange");
    for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let lag = dirichlet_lagrangian(n, m);
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}m{m}")), &lag, |b, lag| {
            b.iter(|| euler_lagrange(black_box(lag)).unwrap())
        });
    }
    group.finish();

    let source = euler_lagrange(&dirichlet_lagrangian(2, 2)).unwrap();
    c.bench_function("helmholtz/n2m2", |b| b.iter(|| helmholtz(black_box(&source)).unwrap()));
}

fn prolongation(c: &mut Criterion) {
    let ctx = JetContext::new(2, 2).unwrap();
    let (x, y) = (quadratic_field(ctx, 0), quadratic_field(ctx, 1));
    c.bench_function("prolong_bracket/n2m2", |b| b.iter(|| black_box(&x).bracket(black_box(&y)).prolong()));
}

fn bicomplex(c: &mut Criterion) {
    let lag = dirichlet_lagrangian(2, 2);
    c.bench_function("d_v_d_h/n2m2", |b| b.iter(|| black_box(&lag).d_v().d_h()));
}

criterion_group!(benches, euler_lagrange_and_helmholtz, prolongation, bicomplex);
criterion_main!(benches);
