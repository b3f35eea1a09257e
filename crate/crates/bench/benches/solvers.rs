//! Benchmarks for the hot paths: strong clique via the square, exact
//! strong chromatic index, minor search on the generated families, the
//! weight decomposition and the constructive colouring.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use strongchrom::constructions::{blown_c5, gkd, random_series_parallel, skd};
use strongchrom::decompose::{decompose, multiplicity_weighting};
use strongchrom::k4color::{strong_colour_k4, ColouringTask};
use strongchrom::minors::{has_clique_minor, MinorConfig};
use strongchrom::solvers::{strong_chromatic_index, strong_clique_number, Limits};

fn bench_strong_clique(c: &mut Criterion) {
    let g = blown_c5(2).unwrap();
    c.bench_function("strong_clique_number blown_c5(2)", |b| {
        b.iter(|| strong_clique_number(black_box(&g)).unwrap())
    });
}

fn bench_strong_index(c: &mut Criterion) {
    let g = gkd(5, 6).unwrap().graph;
    let limits = Limits::default();
    c.bench_function("strong_chromatic_index G(5,6)", |b| {
        b.iter(|| strong_chromatic_index(black_box(&g), &limits).unwrap())
    });
}

fn bench_minor_search(c: &mut Criterion) {
    let g = skd(6, 7).unwrap().graph.underlying_simple();
    let cfg = MinorConfig::default();
    c.bench_function("has_clique_minor S(6,7) k=6", |b| {
        b.iter(|| has_clique_minor(black_box(&g), 6, &cfg).unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let g = gkd(6, 7).unwrap().graph;
    let w = multiplicity_weighting(&g);
    c.bench_function("decompose multiplicities of G(6,7)", |b| {
        b.iter(|| decompose(black_box(&w)).unwrap())
    });
}

fn bench_k4_colouring(c: &mut Criterion) {
    let g = random_series_parallel(30, 5, 11).unwrap();
    let cfg = MinorConfig::default();
    c.bench_function("strong_colour_k4 SP(budget=30)", |b| {
        b.iter(|| {
            let task = ColouringTask::all_edges(g.clone());
            strong_colour_k4(black_box(&task), &cfg).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_strong_clique,
    bench_strong_index,
    bench_minor_search,
    bench_decompose,
    bench_k4_colouring
);
criterion_main!(benches);
