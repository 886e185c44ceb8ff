use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use letterkit::checks::r2_column_classes;
use letterkit::composer::{compose, ComposeOptions};
use letterkit::corpus::{all_graphs, random_prime_inflation, rng};
use letterkit::graph::stacked_path;
use letterkit::par;
use letterkit::solver::{is_k_letterable, lettericity, SolveOptions};

const MODES: [(&str, bool); 2] = [("parallel", true), ("sequential", false)];

fn solver(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let six = all_graphs(6).unwrap();
    let (r2, classes) = r2_column_classes().unwrap();
    let (r3, _) = stacked_path(3).unwrap();
    let mut group = c.benchmark_group("solver");
    group.sample_size(10);
    for (mode, on) in MODES {
        par::set_parallel(on);
        group.bench_function(BenchmarkId::new("lettericity_all_n6", mode), |b| {
            b.iter(|| {
                six.iter()
                    .map(|g| lettericity(g, &opts).unwrap().0)
                    .sum::<usize>()
            })
        });
        group.bench_function(BenchmarkId::new("r2_column_constrained_k4", mode), |b| {
            b.iter(|| is_k_letterable(&r2, 4, Some(&classes), &opts).unwrap())
        });
        group.bench_function(BenchmarkId::new("r3_k4", mode), |b| {
            b.iter(|| is_k_letterable(&r3, 4, None, &opts).unwrap())
        });
    }
    par::set_parallel(true);
    group.finish();
}

fn composer(c: &mut Criterion) {
    let mut r = rng(1);
    let graphs: Vec<_> = (0..50)
        .map(|_| random_prime_inflation(&mut r, 40).0)
        .collect();
    let opts = ComposeOptions {
        bound_check: false,
        ..ComposeOptions::default()
    };
    let mut group = c.benchmark_group("composer");
    group.sample_size(10);
    for (mode, on) in MODES {
        par::set_parallel(on);
        group.bench_function(BenchmarkId::new("inflations_n40", mode), |b| {
            b.iter(|| {
                graphs
                    .iter()
                    .map(|g| compose(g, &opts).unwrap().alphabet_size)
                    .sum::<usize>()
            })
        });
    }
    par::set_parallel(true);
    group.finish();
}

criterion_group!(benches, solver, composer);
criterion_main!(benches);
