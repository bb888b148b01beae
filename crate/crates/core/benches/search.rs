use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use critset::completion::{count_completions, partial_latin_counts};
use critset::par::with_threads;
use critset::teaching::scs;
use critset::{Cap, Limits, PartialLatinSquare};

fn pools(c: &mut Criterion) {
    let lim = Limits::default();
    let empty5 = PartialLatinSquare::empty(5).unwrap();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (label, threads) in [("sequential", 1), ("pool", 0)] {
        group.bench_function(BenchmarkId::new("count_completions_5", label), |b| {
            b.iter(|| with_threads(threads, || count_completions(&empty5, Cap::Unbounded)))
        });
        group.bench_function(BenchmarkId::new("scs_4", label), |b| {
            b.iter(|| with_threads(threads, || scs(4, &lim).unwrap().scs))
        });
        group.bench_function(BenchmarkId::new("partial_counts_4", label), |b| {
            b.iter(|| with_threads(threads, || partial_latin_counts(4, &lim).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
