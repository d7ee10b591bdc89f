use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use foldhecke::alcove::{random_point, reduce};
use foldhecke::exec::{map_par, map_seq};
use foldhecke::folding::fold;
use foldhecke::tables::{enumerate_cases, table_row};

fn rows(c: &mut Criterion) {
    let cases = enumerate_cases("A6", 2).unwrap();
    let mut g = c.benchmark_group("table rows A6 d=2");
    g.sample_size(10);
    g.bench_function("seq", |b| b.iter(|| map_seq(&cases, table_row)));
    g.bench_function("par", |b| b.iter(|| map_par(&cases, table_row)));
    g.finish();
}

fn reductions(c: &mut Criterion) {
    let f = fold("D4", 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let points: Vec<_> = (0..200).map(|_| random_point(&f, &mut rng, true)).collect();
    let mut g = c.benchmark_group("alcove reduction D4 d=3");
    g.bench_function("seq", |b| b.iter(|| map_seq(&points, |x| reduce(&f, x).unwrap())));
    g.bench_function("par", |b| b.iter(|| map_par(&points, |x| reduce(&f, x).unwrap())));
    g.finish();
}

criterion_group!(benches, rows, reductions);
criterion_main!(benches);
