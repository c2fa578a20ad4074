//! Single-thread pool against the default pool on the data-parallel paths:
//! eigencone support search, per-vertex radii and whole phase diagrams.

#[path = "../tests/common/mod.rs"]
mod common;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kgraph_kms::kms::{phase_diagram, Algebra};
use kgraph_kms::{eigencone_vertices, fixtures, Level, Settings, Skeleton, Spectrum, VertexSet};
use rayon::ThreadPool;

fn pools() -> [(&'static str, ThreadPool); 2] {
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    [("1-thread", serial), ("default", default)]
}

/// Block-diagonal copies of an identity: every vertex carries its own
/// eigenvector, so the support search visits the most candidates.
fn loops(n: usize) -> Skeleton {
    let rows: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j) * 2).collect()).collect();
    Skeleton::from_rows(&[rows]).unwrap()
}

fn eigencone(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigencone");
    for n in [10, 14, 16] {
        let g = loops(n);
        let none = VertexSet::empty(n);
        let targets = [(0, Level::approx(2.0))];
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| pool.install(|| eigencone_vertices(g, &targets, &none, &Settings::default()).unwrap()))
            });
        }
    }
    // no edges and an unattainable level: every subset is closed and fails
    for n in [10, 14] {
        let g = Skeleton::from_rows(&[vec![vec![0; n]; n]]).unwrap();
        let none = VertexSet::empty(n);
        let targets = [(0, Level::approx(3.0))];
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(format!("{name}/infeasible"), n), &g, |b, g| {
                b.iter(|| pool.install(|| eigencone_vertices(g, &targets, &none, &Settings::default()).unwrap()))
            });
        }
    }
    group.finish();
}

fn diagrams(c: &mut Criterion) {
    let mut group = c.benchmark_group("phase_diagram");
    let families: Vec<Skeleton> = (0..16).map(|seed| common::block_family(seed, 8)).collect();
    let ex1 = fixtures::ex1();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "ex1"), |b| {
            b.iter(|| {
                pool.install(|| {
                    let sp = Spectrum::new(&ex1, Settings::default()).unwrap();
                    phase_diagram(&sp, Algebra::Toeplitz).unwrap()
                })
            })
        });
        group.bench_function(BenchmarkId::new(name, "generated-16"), |b| {
            b.iter(|| {
                pool.install(|| {
                    for g in &families {
                        let sp = Spectrum::new(g, Settings::default()).unwrap();
                        phase_diagram(&sp, Algebra::Toeplitz).unwrap();
                    }
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, eigencone, diagrams);
criterion_main!(benches);
