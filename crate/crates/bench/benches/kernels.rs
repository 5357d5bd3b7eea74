//! Criterion benchmarks for the computational kernels: multiplication,
//! division, gcrd, minimal central left multiple, eigenring, factorizer.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewlab_core::selftest::random_monic;
use skewlab_core::skew::{mclm, s_gcrd, s_mul, s_right_divmod};
use skewlab_core::text::TowerSpec;
use skewlab_core::petit::{eigenring, PetitAlgebra};
use skewlab_core::reducibility::factorize;
use skewlab_core::{FieldTower, SkewPoly};

fn tower(spec: &str) -> FieldTower {
    TowerSpec::parse(spec).unwrap().build().unwrap()
}

fn sample(tower: &FieldTower, deg: usize, seed: u64) -> SkewPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_monic(tower, deg, &mut rng, true)
}

fn bench_mul(c: &mut Criterion) {
    let k = tower("GF(2)^4");
    for deg in [8usize, 32] {
        let a = sample(&k, deg, 11);
        let b = sample(&k, deg, 12);
        c.bench_function(&format!("s_mul/gf16/deg{deg}"), |bench| {
            bench.iter(|| s_mul(black_box(&a), black_box(&b)).unwrap())
        });
    }
}

fn bench_divmod(c: &mut Criterion) {
    let k = tower("GF(2)^4");
    let a = sample(&k, 64, 21);
    let b = sample(&k, 32, 22);
    c.bench_function("s_right_divmod/gf16/deg64_by_deg32", |bench| {
        bench.iter(|| s_right_divmod(black_box(&a), black_box(&b)).unwrap())
    });
}

fn bench_gcrd(c: &mut Criterion) {
    let k = tower("GF(2)^4");
    let g = sample(&k, 8, 31);
    let a = s_mul(&sample(&k, 24, 32), &g).unwrap();
    let b = s_mul(&sample(&k, 24, 33), &g).unwrap();
    c.bench_function("s_gcrd/gf16/deg32_pair", |bench| {
        bench.iter(|| s_gcrd(black_box(&a), black_box(&b)).unwrap())
    });
}

fn bench_mclm(c: &mut Criterion) {
    let k = tower("GF(2)^4");
    let f = sample(&k, 6, 41);
    c.bench_function("mclm/gf16/deg6", |bench| {
        bench.iter(|| mclm(black_box(&f)).unwrap())
    });
}

fn bench_eigenring(c: &mut Criterion) {
    let k = tower("GF(2)^4");
    let f = sample(&k, 6, 51);
    let alg = PetitAlgebra::new(&f).unwrap();
    c.bench_function("eigenring/gf16/deg6", |bench| {
        bench.iter(|| eigenring(black_box(&alg)))
    });
}

fn bench_factorize(c: &mut Criterion) {
    let k = tower("GF(2)^3");
    let f = s_mul(&sample(&k, 3, 61), &sample(&k, 3, 62)).unwrap();
    c.bench_function("factorize/gf8/deg6_product", |bench| {
        bench.iter(|| factorize(black_box(&f), 0).unwrap())
    });
}

criterion_group!(
    kernels,
    bench_mul,
    bench_divmod,
    bench_gcrd,
    bench_mclm,
    bench_eigenring,
    bench_factorize
);
criterion_main!(kernels);
