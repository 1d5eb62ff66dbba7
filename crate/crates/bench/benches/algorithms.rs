use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hnnkit::dehn::{sample_trivial_words, DehnSolver};
use hnnkit::hnn::{construct_embedding, construct_irreducible_embedding};
use hnnkit::presentation::compute_pieces;
use hnnkit::stallings::CoreGraph;
use hnnkit::words::eulerian_digram_word;
use hnnkit::{Alphabet, Symmetrization};
use hnnkit_bench::{h1, subgroup_words, w_presentation};

fn words(c: &mut Criterion) {
    let al = Alphabet::new(["a", "b", "c", "d"]).unwrap();
    c.bench_function("eulerian_digram_word/4", |b| {
        b.iter(|| eulerian_digram_word(black_box(&al)).unwrap())
    });
    let w = eulerian_digram_word(&al).unwrap().pow(8);
    c.bench_function("exponent/456", |b| b.iter(|| black_box(&w).exponent()));
}

fn pieces(c: &mut Criterion) {
    let p = w_presentation(5);
    c.bench_function("compute_pieces/W5", |b| {
        b.iter(|| compute_pieces(black_box(&p), Symmetrization::Symmetrized))
    });
}

fn folding(c: &mut Criterion) {
    let gens = subgroup_words();
    c.bench_function("fold/bouquet", |b| {
        b.iter(|| CoreGraph::bouquet(black_box(&gens)).fold().trim_to_core())
    });
}

fn dehn(c: &mut Criterion) {
    let p = w_presentation(3);
    let solver = DehnSolver::new(&p).unwrap();
    let samples = sample_trivial_words(&p, 32, 4, 4, 0);
    c.bench_function("dehn_solve/32 samples", |b| {
        b.iter(|| {
            for w in &samples {
                black_box(solver.solve(w));
            }
        })
    });
}

fn embedding(c: &mut Criterion) {
    let h = h1();
    let mut group = c.benchmark_group("embed");
    group.sample_size(10);
    group.bench_function("basic", |b| {
        b.iter(|| construct_embedding(black_box(&h), 0).unwrap())
    });
    group.bench_function("irreducible", |b| {
        b.iter(|| construct_irreducible_embedding(black_box(&h), 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, words, pieces, folding, dehn, embedding);
criterion_main!(benches);
