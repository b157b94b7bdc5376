use std::hint::black_box;
use std::path::{Path, PathBuf};

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use superlie::algebra::{Parity, SuperAlgebra};
use superlie::derivations::derivation_space_with;
use superlie::exec::Execution;
use superlie::format::parse_file;
use superlie::golden::check_corpus;
use superlie::linalg::{all_nilpotent_space_with, Mat};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> SuperAlgebra {
    parse_file(&corpus_dir().join(name)).unwrap().algebra
}

fn validate(c: &mut Criterion) {
    let mut g = c.benchmark_group("validate");
    for name in ["ex310.sla", "nine_dim.sla"] {
        let a = load(name);
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &a, |b, a| {
                b.iter(|| black_box(a.validate_with(exec)))
            });
        }
    }
    g.finish();
}

fn derivations(c: &mut Criterion) {
    let mut g = c.benchmark_group("derivation_space");
    for name in ["ex310.sla", "nine_dim.sla"] {
        let a = load(name);
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &a, |b, a| {
                b.iter(|| black_box(derivation_space_with(a, Parity::Even, exec)))
            });
        }
    }
    g.finish();
}

fn nilpotent_space(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_nilpotent_space");
    g.sample_size(20);
    let a = load("ex310.sla");
    let basis: Vec<Mat> = derivation_space_with(&a, Parity::Even, Execution::Sequential)
        .into_iter()
        .map(|d| d.matrix)
        .collect();
    for (mode, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(mode, "ex310.sla"), &basis, |b, basis| {
            b.iter(|| black_box(all_nilpotent_space_with(basis, exec).unwrap()))
        });
    }
    g.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_corpus");
    g.sample_size(10);
    let dir = corpus_dir();
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| b.iter(|| black_box(check_corpus(&dir, exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, validate, derivations, nilpotent_space, corpus_sweep);
criterion_main!(benches);
