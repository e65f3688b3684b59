//! Sequential (one-thread pool) against the default rayon pool for the hot
//! stages of the pipeline.

use std::collections::BTreeSet;

use chrono::{TimeZone, Utc};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use infonet::centrality::{information_centrality, Measure};
use infonet::corrnet::{correlation_matrix, to_similarity_graph};
use infonet::filtergraph::tmfg;
use infonet::rolling::{roll, NetworkFilter, PercentilePair, WindowSpec};
use infonet::synthetic::FactorModel;
use rayon::ThreadPool;

fn pools() -> Vec<(&'static str, ThreadPool)> {
    vec![
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn bench(c: &mut Criterion) {
    let t0 = Utc.with_ymd_and_hms(2022, 10, 16, 0, 0, 0).unwrap();
    let day = FactorModel::new(200, 4, 1).panel(t0, 1440);
    let network = tmfg(&to_similarity_graph(&correlation_matrix(&day, 0..1440).unwrap())).unwrap();
    let short = FactorModel::new(60, 3, 2).panel(t0, 3 * 1440);
    let measures: BTreeSet<Measure> = Measure::ALL.into_iter().collect();
    let pct = PercentilePair::defaults();

    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("correlation_200x1440", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| correlation_matrix(&day, 0..1440).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("information_tmfg_200", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| information_centrality(network.graph()).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("roll_60x3d", name), &pool, |b, pool| {
            b.iter(|| {
                pool.install(|| roll(&short, &WindowSpec::default(), NetworkFilter::Tmfg, &measures, &pct).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
