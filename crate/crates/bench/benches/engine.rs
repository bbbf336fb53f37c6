use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncstab_core::c3::extract_c3;
use ncstab_core::catalog::sklyanin;
use ncstab_core::pointscheme::{analyze, semistandard_check};
use ncstab_core::testconfig::{random_flag, weight_table};
use ncstab_core::PrimeField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> PrimeField {
    PrimeField::new(10007).unwrap()
}

fn graded_pieces(c: &mut Criterion) {
    let f = field();
    let mut g = c.benchmark_group("hilbert");
    g.sample_size(10);
    for n in [4usize, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sklyanin(&f, &1, &2, &3).unwrap().hilbert(n).unwrap())
        });
    }
    g.finish();
}

fn futaki(c: &mut Criterion) {
    let f = field();
    let a = sklyanin(&f, &1, &2, &3).unwrap();
    a.hilbert(5).unwrap();
    let filt = random_flag(&f, &mut ChaCha8Rng::seed_from_u64(1), 2, 1).unwrap();
    c.bench_function("weight_table/n=5", |b| b.iter(|| weight_table(&a, &filt, 5).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let f = field();
    let a = sklyanin(&f, &1, &2, &3).unwrap();
    c.bench_function("cubic", |b| b.iter(|| semistandard_check(&a).unwrap()));
    c.bench_function("analyze", |b| b.iter(|| analyze(&a).unwrap()));
}

fn normal_element(c: &mut Criterion) {
    let f = field();
    let a = sklyanin(&f, &1, &2, &3).unwrap();
    a.hilbert(4).unwrap();
    let mut g = c.benchmark_group("c3");
    g.sample_size(10);
    g.bench_function("extract/n=4", |b| {
        b.iter(|| extract_c3(&a, 4, &mut ChaCha8Rng::seed_from_u64(0)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, graded_pieces, futaki, geometry, normal_element);
criterion_main!(benches);
