use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use qform_core::exactnum::{factorize, int, rat};
use qform_core::forms::{invariants, scaled_identity, simplex_form};
use qform_core::graphinv::clique_number;
use qform_core::hilbert::hilbert;
use qform_core::{Place, QForm};

fn bench_factorize(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorize");
    for n in [10_403u64, 999_999_000_001, 1_000_000_007 * 998_244_353] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &BigUint::from(n), |b, n| {
            b.iter(|| factorize(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bench_hilbert(c: &mut Criterion) {
    let a = rat(-123_456, 7_919);
    let b = rat(999_983, 1_024);
    let places = [Place::Real, Place::two(), Place::prime(3).unwrap(), Place::prime(999_983).unwrap()];
    c.bench_function("hilbert/4 places", |bench| {
        bench.iter(|| places.iter().map(|v| hilbert(black_box(&a), black_box(&b), v).unwrap()).product::<i8>())
    });
}

fn bench_invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariants");
    for k in [4usize, 8, 16] {
        let s = simplex_form(k).unwrap();
        group.bench_with_input(BenchmarkId::new("S_k", k), &s, |b, s| b.iter(|| invariants(black_box(s)).unwrap()));
    }
    group.finish();
}

fn bench_clique(c: &mut Criterion) {
    let mut group = c.benchmark_group("clique_number");
    let forms: Vec<(String, QForm)> = vec![
        ("S8".into(), simplex_form(8).unwrap()),
        ("I8/7".into(), scaled_identity(8, &int(7)).unwrap()),
        ("diag:2,3,5,7,11".into(), QForm::diagonal(&[int(2), int(3), int(5), int(7), int(11)]).unwrap()),
    ];
    for (name, q) in &forms {
        group.bench_with_input(BenchmarkId::from_parameter(name), q, |b, q| b.iter(|| clique_number(black_box(q)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_factorize, bench_hilbert, bench_invariants, bench_clique);
criterion_main!(benches);
