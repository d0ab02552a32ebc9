use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use qform_core::exactnum::{
    factorize, is_prime, is_square_at, legendre, rat, rational_sqrt, square_class, Rational,
};
use qform_core::forms::{determinant, equivalent, Matrix};
use qform_core::geometry::{gram_from_points, PointSet};
use qform_core::hilbert::hilbert;
use qform_core::oracle::brute_hilbert;
use qform_core::{Place, QForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-100_000i64..=-1, 1i64..=100_000], 1i64..=100_000).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quotient_by_square_class_is_a_square(r in nonzero_rational()) {
        let s = square_class(&r).unwrap();
        let q = &r / s.to_rational();
        prop_assert!(rational_sqrt(&q).is_some());
        prop_assert_eq!(s.is_positive(), r > Rational::zero());
    }

    #[test]
    fn square_class_ignores_squares(r in nonzero_rational(), s in nonzero_rational()) {
        prop_assert_eq!(square_class(&(&r * &s * &s)).unwrap(), square_class(&r).unwrap());
    }

    #[test]
    fn legendre_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, idx in 0usize..8) {
        let p = [3u64, 5, 7, 11, 13, 101, 7919, 1_000_003][idx];
        let pb = BigUint::from(p);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let la = legendre(&a, &pb).unwrap();
        let lb = legendre(&b, &pb).unwrap();
        if la != 0 && lb != 0 {
            prop_assert_eq!(legendre(&(&a * &b), &pb).unwrap(), la * lb);
        }
    }

    #[test]
    fn local_square_kills_symbol(x in nonzero_rational(), b in nonzero_rational(), idx in 0usize..6) {
        let place = [Place::Real, Place::two(), Place::prime(3).unwrap(), Place::prime(5).unwrap(),
                     Place::prime(7).unwrap(), Place::prime(17).unwrap()][idx].clone();
        if is_square_at(&x, &place).unwrap() {
            prop_assert_eq!(hilbert(&x, &b, &place).unwrap(), 1);
        }
    }
}

#[test]
fn factorization_remultiplies() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..1000 {
        let n: u64 = rng.gen_range(1..=1_000_000_000_000);
        let f = factorize(&BigUint::from(n)).unwrap();
        assert!(f.iter().all(is_prime), "{n}: {f:?}");
        assert!(f.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(f.iter().fold(BigUint::one(), |acc, p| acc * p), BigUint::from(n));
    }
}

#[test]
fn symbol_agrees_with_brute_force_grid() {
    let values = [1i64, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10, 30, -30];
    let places = [Place::Real, Place::two(), Place::prime(3).unwrap(), Place::prime(5).unwrap()];
    for &a in &values {
        for &b in &values {
            for v in &places {
                let (a, b) = (rat(a, 1), rat(b, 1));
                assert_eq!(hilbert(&a, &b, v).unwrap(), brute_hilbert(&a, &b, v).unwrap(), "({a}, {b})_{v}");
            }
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect())
            .collect();
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

#[test]
fn gram_of_independent_vectors_is_equivalent_to_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let entries: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(1..=25), rng.gen_range(1..=5))).collect();
        let q = QForm::diagonal(&entries).unwrap().compose(&random_invertible(&mut rng, n)).unwrap();
        let vectors = PointSet::new(n, random_invertible(&mut rng, n)).unwrap();
        let m = gram_from_points(&vectors, &q).unwrap();
        assert!(equivalent(&QForm::new(m).unwrap(), &q).unwrap());
    }
}
