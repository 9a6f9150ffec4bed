use criterion::{criterion_group, criterion_main, Criterion};
use sds_bench::reference_params;
use sds_core::sim::{self, make_string_task, BernoulliTask};

fn bench_urn_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("run/urn_n1000_200it");
    group.sample_size(20);
    for p_minus in [0.1, 0.5] {
        let task = BernoulliTask::from_params(&reference_params(p_minus)).unwrap();
        group.bench_function(format!("p_minus={p_minus}"), |b| {
            b.iter(|| sim::run(&task, 1000, 200, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_string_run(c: &mut Criterion) {
    let task = make_string_task(0.2, 10, 1000).unwrap();
    let mut group = c.benchmark_group("run/string_n1000_200it");
    group.sample_size(20);
    group.bench_function("p_minus=0.2", |b| b.iter(|| sim::run(&task, 1000, 200, 0).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_urn_run, bench_string_run);
criterion_main!(benches);
