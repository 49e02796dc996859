//! Benchmarks of the data-parallel pipelines, comparing the rayon path
//! against a sequential baseline.
//!
//! With the default `rayon` feature the parallel variants run on the global
//! thread pool and the sequential baselines run the same code inside a
//! single-threaded pool. Built with `--no-default-features` only the
//! sequential variants exist.

use criterion::{criterion_group, criterion_main, Criterion};

use disconn_core::finite_model::{verify_classification, FiniteModel};
use disconn_core::fixtures;
use disconn_core::hw::{classify_labels, CocycleAssignment, LabelPoset};
use disconn_core::modelfile::builtin_model;
use disconn_core::par;
use disconn_core::report::{self, Suite};
use disconn_core::rootdata::{RootDatum, Weight};

fn verify_all(models: &[FiniteModel]) -> usize {
    par::map_collect(models, |m| {
        verify_classification(m, 0)
            .expect("fixtures verify")
            .passed()
    })
    .into_iter()
    .filter(|&ok| ok)
    .count()
}

fn freudenthal_batch(datum: &RootDatum, weights: &[Weight]) -> u64 {
    par::map_collect(weights, |w| {
        datum
            .weight_multiplicities(w)
            .expect("dominant weights")
            .values()
            .sum::<u64>()
    })
    .into_iter()
    .sum()
}

fn bench_fixture_verification(c: &mut Criterion) {
    let models = fixtures::all_builtin().unwrap();
    let mut group = c.benchmark_group("verify_classification");
    group.sample_size(10);
    #[cfg(feature = "rayon")]
    {
        group.bench_function("parallel", |b| b.iter(|| verify_all(&models)));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("sequential", |b| {
            b.iter(|| pool.install(|| verify_all(&models)))
        });
    }
    #[cfg(not(feature = "rayon"))]
    group.bench_function("sequential", |b| b.iter(|| verify_all(&models)));
    group.finish();
}

fn bench_freudenthal(c: &mut Criterion) {
    let datum = disconn_core::presets::root_datum("a2").unwrap();
    let mut weights = Vec::new();
    for a in 0..=12i64 {
        for b in 0..=12i64 {
            let w = Weight(vec![a, b]);
            if datum.height(&w) <= 24 {
                weights.push(w);
            }
        }
    }
    let mut group = c.benchmark_group("freudenthal_batch");
    group.sample_size(10);
    #[cfg(feature = "rayon")]
    {
        group.bench_function("parallel", |b| {
            b.iter(|| freudenthal_batch(&datum, &weights))
        });
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("sequential", |b| {
            b.iter(|| pool.install(|| freudenthal_batch(&datum, &weights)))
        });
    }
    #[cfg(not(feature = "rayon"))]
    group.bench_function("sequential", |b| {
        b.iter(|| freudenthal_batch(&datum, &weights))
    });
    group.finish();
}

fn build_poset() -> usize {
    let resolved = builtin_model("a1xa1_swap").unwrap().resolve().unwrap();
    let comb = resolved.combinatorial.unwrap();
    let labels = classify_labels(
        &comb.datum,
        &comb.action,
        &CocycleAssignment::Trivial,
        resolved.field,
        &comb.ideal_weights,
        0,
    )
    .unwrap();
    LabelPoset::build(&comb.datum, &comb.action, labels)
        .unwrap()
        .strict
        .len()
}

fn bench_poset(c: &mut Criterion) {
    let mut group = c.benchmark_group("label_poset");
    group.sample_size(10);
    #[cfg(feature = "rayon")]
    {
        group.bench_function("parallel", |b| b.iter(build_poset));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("sequential", |b| b.iter(|| pool.install(build_poset)));
    }
    #[cfg(not(feature = "rayon"))]
    group.bench_function("sequential", |b| b.iter(build_poset));
    group.finish();
}

fn bench_verify_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_suite_all");
    group.sample_size(10);
    group.bench_function("payload", |b| {
        b.iter(|| report::verify_payload(Suite::All, 0).unwrap().1)
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_fixture_verification,
    bench_freudenthal,
    bench_poset,
    bench_verify_suite
);
criterion_main!(benches);
