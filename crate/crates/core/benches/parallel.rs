use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lawson_core::engine;
use lawson_core::omega::{build_table_with, Endpoint};
use lawson_core::{Angle, Parallelism, PrecisionConfig};

fn modes() -> [(&'static str, Parallelism); 2] {
    [("rayon", Parallelism::Auto), ("sequential", Parallelism::Sequential)]
}

fn omega_table(c: &mut Criterion) {
    let cfg = PrecisionConfig::new(30).unwrap();
    let phi = Angle::pi_over(4);
    let mut g = c.benchmark_group("omega_table_depth5");
    g.sample_size(10);
    for (name, mode) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_table_with(Endpoint::One, black_box(&phi), 5, &cfg, mode).unwrap())
        });
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let cfg = PrecisionConfig::new(30).unwrap();
    let table = build_table_with(Endpoint::One, &Angle::pi_over(4), 6, &cfg, Parallelism::Auto).unwrap();
    let mut g = c.benchmark_group("engine_order5");
    g.sample_size(10);
    for (name, mode) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| engine::run_with_table(5, black_box(&table), mode).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, omega_table, expansion);
criterion_main!(benches);
