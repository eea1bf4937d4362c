use criterion::{black_box, criterion_group, criterion_main, Criterion};
use jetvar::char_ring::{anomaly_p, anomaly_q, Presentation, RepDescriptor};
use jetvar::formal_vf::{CeSubalgebra, FormalVFModel};
use jetvar::weil_cohomology::{LieAlgebraData, SubalgebraEmbedding, WeilAlgebra, WoAlgebra};
use jetvar::Scalar;

fn weil(c: &mut Criterion) {
    let so3 = LieAlgebraData::so3();
    let full = SubalgebraEmbedding::full(&so3);
    c.bench_function("weil/so3_rel_so3_0..6", |b| {
        b.iter(|| WeilAlgebra::build(black_box(&so3), None).unwrap().relative_cohomology(&full, 0..=6).unwrap())
    });
    c.bench_function("wo/n2_0..4", |b| b.iter(|| WoAlgebra::build(black_box(2)).unwrap().cohomology(0..=4).unwrap()));
}

fn gelfand_fuks(c: &mut Criterion) {
    c.bench_function("gf/a1_0..3", |b| {
        b.iter(|| FormalVFModel::new(black_box(1), None).unwrap().relative_cohomology(CeSubalgebra::Trivial, 0..=3, 0..=0).unwrap())
    });
    c.bench_function("gf/a2_rel_so_0..4", |b| {
        b.iter(|| FormalVFModel::new(black_box(2), None).unwrap().relative_cohomology(CeSubalgebra::So, 0..=4, 0..=0).unwrap())
    });
}

fn anomalies(c: &mut Criterion) {
    let rep = RepDescriptor::Sum(vec![RepDescriptor::Vector, RepDescriptor::DiracSpinor]);
    c.bench_function("anomaly_p/n10", |b| b.iter(|| anomaly_p(black_box(10), &rep).unwrap()));
    let u1 = Presentation::unitary(1).unwrap();
    let charge = RepDescriptor::Charge(Scalar::from_int(2));
    c.bench_function("anomaly_q/n6", |b| b.iter(|| anomaly_q(black_box(6), &RepDescriptor::Vector, &u1, &charge).unwrap()));
}

criterion_group!(benches, weil, gelfand_fuks, anomalies);
criterion_main!(benches);
