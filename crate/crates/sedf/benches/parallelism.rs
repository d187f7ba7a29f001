//! Sequential vs rayon-backed throughput on the two bulk operations:
//! the prime-power scan and exhaustive search.
//!
//! Run with `cargo bench -p sedf`. Both versions produce identical output
//! (covered by the `parallel_equiv` test); this measures the speedup only.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sedf::GroupSpec;

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_cyclotomic");
    for q_max in [128u64, 512] {
        group.bench_with_input(BenchmarkId::new("sequential", q_max), &q_max, |b, &q| {
            b.iter(|| sedf::scan_cyclotomic(q, 2).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("parallel", q_max), &q_max, |b, &q| {
            b.iter(|| sedf::parallel::scan_cyclotomic(q, 2).unwrap());
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_search");
    // Z_13 with m = 2, k = 6 (lambda = 3): 792 independent subtrees.
    let z13 = GroupSpec::cyclic(13).unwrap();
    group.bench_function("sequential/z13_m2_k6", |b| {
        b.iter(|| sedf::exhaustive_search(&z13, 2, 6, None).unwrap());
    });
    group.bench_function("parallel/z13_m2_k6", |b| {
        b.iter(|| sedf::parallel::exhaustive_search(&z13, 2, 6, None).unwrap());
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(3))
        .warm_up_time(Duration::from_millis(500));
    targets = bench_scan, bench_search
}
criterion_main!(benches);
