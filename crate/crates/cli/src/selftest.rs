//! Built-in consistency sweep: Hilbert product formula, closed-form `S_k`
//! invariants against direct diagonalization, and symbol vs brute force.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use qform_core::exactnum::{rat, square_class};
use qform_core::forms::{invariants, lambda, simplex_form};
use qform_core::hilbert::{hilbert, hilbert_support, product_formula_holds_with};
use qform_core::oracle::brute_hilbert;
use qform_core::{Place, Rational};

pub type SymbolFn = fn(&Rational, &Rational, &Place) -> qform_core::Result<i8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: &'static str,
    pub detail: String,
}

/// Implementations under test. The defaults are the library's own; tests
/// swap in broken ones to make sure the sweep notices.
#[derive(Clone, Copy)]
pub struct SelfTest {
    pub symbol: SymbolFn,
    pub lambda: fn(u64) -> u64,
    pub product_pairs: usize,
    pub max_k: usize,
}

impl Default for SelfTest {
    fn default() -> Self {
        SelfTest { symbol: hilbert, lambda, product_pairs: 500, max_k: 12 }
    }
}

/// Deterministic generator so the sweep is reproducible.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    /// Nonzero rational with numerator and denominator up to `bound` in absolute value.
    fn rational(&mut self, bound: u64) -> Rational {
        let n = (self.next() % bound) as i64 + 1;
        let d = (self.next() % bound) as i64 + 1;
        if self.next().is_multiple_of(2) {
            rat(n, d)
        } else {
            rat(-n, d)
        }
    }
}

const GRID: [i64; 14] = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10, 30, -30];

impl SelfTest {
    /// Runs every check and returns `(check name, failures)` per check.
    pub fn run(&self) -> Vec<(&'static str, Vec<Failure>)> {
        vec![
            ("product formula", self.product_formula()),
            ("S_k closed form", self.closed_form()),
            ("symbol vs brute force", self.brute_grid()),
        ]
    }

    fn product_formula(&self) -> Vec<Failure> {
        let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
        let mut failures = Vec::new();
        for _ in 0..self.product_pairs {
            let a = rng.rational(1_000_000);
            let b = rng.rational(1_000_000);
            match product_formula_holds_with(&a, &b, self.symbol) {
                Ok(true) => {}
                Ok(false) => failures.push(Failure {
                    check: "product formula",
                    detail: format!("product of ({a}, {b})_v over all places is -1"),
                }),
                Err(e) => failures.push(Failure { check: "product formula", detail: format!("({a}, {b}): {e}") }),
            }
        }
        failures
    }

    fn closed_form(&self) -> Vec<Failure> {
        let mut failures = Vec::new();
        for k in 1..=self.max_k {
            if let Err(detail) = self.compare_s_k(k) {
                failures.push(Failure { check: "S_k closed form", detail });
            }
        }
        failures
    }

    fn compare_s_k(&self, k: usize) -> Result<(), String> {
        let err = |e: qform_core::Error| format!("S_{k}: {e}");
        let direct = invariants(&simplex_form(k).map_err(err)?).map_err(err)?;
        let lam = Rational::from_integer(BigInt::from((self.lambda)(k as u64)));
        let closed_det = square_class(&lam).map_err(err)?;
        if closed_det != direct.det_class {
            return Err(format!(
                "S_{k}: closed-form det class {} but direct det class {}",
                closed_det, direct.det_class
            ));
        }
        let k1 = rat(k as i64 + 1, 1);
        let second = rat(if k.is_multiple_of(2) { -2 } else { -1 }, 1);
        let mut places: BTreeSet<Place> = hilbert_support(&k1, &second).map_err(err)?;
        places.extend(direct.support());
        for v in places {
            let closed = (self.symbol)(&k1, &second, &v).map_err(err)?;
            let actual = direct.hasse_at(&v);
            if closed != actual {
                return Err(format!("S_{k}: closed-form E_{v} = {closed:+} but direct E_{v} = {actual:+}"));
            }
        }
        Ok(())
    }

    fn brute_grid(&self) -> Vec<Failure> {
        let places = [Place::Real, Place::two(), Place::prime(3).expect("prime"), Place::prime(5).expect("prime")];
        let mut failures = Vec::new();
        for &a in &GRID {
            for &b in &GRID {
                for v in &places {
                    let (ra, rb) = (rat(a, 1), rat(b, 1));
                    let fast = (self.symbol)(&ra, &rb, v);
                    let slow = brute_hilbert(&ra, &rb, v);
                    match (fast, slow) {
                        (Ok(x), Ok(y)) if x == y => {}
                        (x, y) => failures.push(Failure {
                            check: "symbol vs brute force",
                            detail: format!("({a}, {b})_{v}: symbol {x:?}, brute force {y:?}"),
                        }),
                    }
                }
            }
        }
        failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flipped_at_two(a: &Rational, b: &Rational, v: &Place) -> qform_core::Result<i8> {
        let s = hilbert(a, b, v)?;
        Ok(if *v == Place::two() { -s } else { s })
    }

    fn uniform_lambda(k: u64) -> u64 {
        k + 1
    }

    fn quick() -> SelfTest {
        SelfTest { product_pairs: 60, ..SelfTest::default() }
    }

    #[test]
    fn default_run_is_clean() {
        for (name, failures) in quick().run() {
            assert!(failures.is_empty(), "{name}: {failures:?}");
        }
    }

    #[test]
    fn sign_flip_at_two_is_caught_by_product_formula() {
        let t = SelfTest { symbol: flipped_at_two, ..quick() };
        let results = t.run();
        let (name, failures) = &results[0];
        assert_eq!(*name, "product formula");
        assert!(!failures.is_empty());
        assert!(failures[0].detail.contains("is -1"));
    }

    #[test]
    fn misdefined_lambda_is_reported_with_both_values() {
        let t = SelfTest { lambda: uniform_lambda, ..quick() };
        let failures = &t.run()[1].1;
        let k9 = failures.iter().find(|f| f.detail.starts_with("S_9:")).expect("k = 9 reported");
        assert_eq!(k9.detail, "S_9: closed-form det class 10 but direct det class 5");
    }
}
