//! Sequential vs parallel cost of the heavy numerical paths. The sequential
//! variant runs the same code inside a one-thread pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use halfspace_core::asep::{self, ASEPRates};
use halfspace_core::kernels;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn goe_cdf(c: &mut Criterion) {
    let mut g = c.benchmark_group("f_goe");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new(name, "x=-2"), &-2.0, |b, &x| {
            b.iter(|| pool.install(|| kernels::f_goe(x).unwrap()))
        });
    }
    g.finish();
}

fn asep_currents(c: &mut Criterion) {
    let rates = ASEPRates::preset(0.4).unwrap();
    let mut g = c.benchmark_group("asep_currents");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "tau=2 runs=20000"), |b| {
            b.iter(|| pool.install(|| asep::sample_currents(2.0, &rates, 1, 20_000).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, goe_cdf, asep_currents);
criterion_main!(benches);
