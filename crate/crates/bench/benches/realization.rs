use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use superfock_bench::shape;
use superfock_core::Realization;

fn homomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("homomorphism_check");
    group.sample_size(10);
    for (m, n, odd, l) in [(1, 1, false, 2), (2, 1, true, 2), (2, 2, false, 2)] {
        let real = Realization::new(shape(m, n, odd, l)).unwrap();
        let id = BenchmarkId::from_parameter(format!("{}_L{l}", real.dim()));
        group.bench_with_input(id, &real, |b, real| b.iter(|| real.check_homomorphism(3).unwrap()));
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let real = Realization::new(shape(2, 2, true, 3)).unwrap();
    c.bench_function("clifford_weyl_relations_osp45_L3", |b| b.iter(|| real.check_generator_relations(4).unwrap()));
}

criterion_group!(benches, homomorphism, relations);
criterion_main!(benches);
