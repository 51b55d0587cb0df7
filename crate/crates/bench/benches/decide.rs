use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use slidetok::{compute_rigid_set, decide};
use slidetok_bench::{alternating_path, identical_pair, random_pair, DECIDE_SIZES};

fn bench_decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(20);
    for &n in &DECIDE_SIZES {
        group.throughput(Throughput::Elements(n as u64));
        let inst = random_pair(n);
        group.bench_with_input(BenchmarkId::new("random", n), &inst, |b, inst| {
            b.iter(|| decide(black_box(inst)))
        });
        let inst = identical_pair(n);
        group.bench_with_input(BenchmarkId::new("identical", n), &inst, |b, inst| {
            b.iter(|| decide(black_box(inst)))
        });
        let inst = alternating_path(n);
        group.bench_with_input(BenchmarkId::new("path", n), &inst, |b, inst| {
            b.iter(|| decide(black_box(inst)))
        });
    }
    group.finish();
}

fn bench_rigid(c: &mut Criterion) {
    let mut group = c.benchmark_group("rigid_set");
    group.sample_size(20);
    for &n in &DECIDE_SIZES {
        group.throughput(Throughput::Elements(n as u64));
        let inst = random_pair(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| compute_rigid_set(inst.tree(), black_box(inst.start())))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_decide, bench_rigid);
criterion_main!(benches);
