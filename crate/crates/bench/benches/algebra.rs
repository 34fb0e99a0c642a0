use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dshuffle_bench::sample_word;
use dshuffle_core::moduli::{chart_coordinates, Partition2, StableTree};
use dshuffle_core::regularization::{reg_integral, reg_series, KnownRelations};
use dshuffle_core::relations::{generate_double_shuffle, rank_and_nullspace, RelationMatrix};
use dshuffle_core::word_algebra::{shuffle, stuffle};
use dshuffle_core::Index;

fn products(c: &mut Criterion) {
    let (u, v) = (sample_word(1, 3), sample_word(2, 2));
    c.bench_function("shuffle 6x6 letters", |b| b.iter(|| shuffle(black_box(&u), black_box(&v))));
    let (a, x): (Index, Index) = ("(1,2,3)".parse().unwrap(), "(2,1,2)".parse().unwrap());
    c.bench_function("stuffle depth 3x3", |b| b.iter(|| stuffle(black_box(&a), black_box(&x))));
}

fn regularization(c: &mut Criterion) {
    let w = "BBABB".parse().unwrap();
    c.bench_function("reg_integral BBABB", |b| b.iter(|| reg_integral(black_box(&w)).unwrap()));
    let i: Index = "(2,1,1,1)".parse().unwrap();
    c.bench_function("reg_series (2,1,1,1)", |b| b.iter(|| reg_series(black_box(&i))));
    c.bench_function("known relations to weight 6", |b| b.iter(|| KnownRelations::new(black_box(6))));
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("relations");
    g.sample_size(10);
    for w in [4u32, 5, 6] {
        g.bench_function(format!("generate and reduce weight {w}"), |b| {
            b.iter(|| rank_and_nullspace(&RelationMatrix::assemble(&generate_double_shuffle(black_box(w)))).rank)
        });
    }
    g.finish();
}

fn moduli(c: &mut Criterion) {
    c.bench_function("partitions of 12 labels", |b| b.iter(|| Partition2::all(black_box(12)).len()));
    let chain = StableTree::binary_chain(8);
    c.bench_function("chart of the 8-edge chain", |b| b.iter(|| chart_coordinates(black_box(&chain)).unwrap()));
}

criterion_group!(benches, products, regularization, relations, moduli);
criterion_main!(benches);
