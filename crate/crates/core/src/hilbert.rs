//! Hilbert symbols `(a, b)_ν` over the real and p-adic completions of Q.
//!
//! Both arguments are reduced to square classes first, so valuations are 0
//! or 1 and unit parts are small squarefree integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorize, legendre_unchecked, square_class, Place, Prime, Rational, SquareClass};

/// `+1` iff `z² = a·x² + b·y²` has a nontrivial solution over `Q_ν`.
pub fn hilbert(a: &Rational, b: &Rational, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(hilbert_classes(&square_class(a)?, &square_class(b)?, place))
}

/// Hilbert symbol of two square classes.
pub fn hilbert_classes(a: &SquareClass, b: &SquareClass, place: &Place) -> i8 {
    match place {
        Place::Real => {
            if a.is_positive() || b.is_positive() {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split(a, p);
            let (beta, v) = split(b, p);
            if p.is_two() {
                let eps = |x: &BigInt| u8::from(mod_n(x, 4) == 3);
                let omega = |x: &BigInt| u8::from(matches!(mod_n(x, 8), 3 | 5));
                let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let pv = p.value();
                let mut s: i8 = 1;
                if alpha == 1 && beta == 1 && mod_n(&BigInt::from(pv.clone()), 4) == 3 {
                    s = -s;
                }
                if beta == 1 {
                    s *= legendre_unchecked(&u, pv);
                }
                if alpha == 1 {
                    s *= legendre_unchecked(&v, pv);
                }
                s
            }
        }
    }
}

/// Valuation (0 or 1) and unit part of a squarefree representative.
fn split(s: &SquareClass, p: &Prime) -> (u8, BigInt) {
    if s.divisible_by(p) {
        (1, s.representative() / BigInt::from(p.value().clone()))
    } else {
        (0, s.representative().clone())
    }
}

fn mod_n(x: &BigInt, n: i64) -> i64 {
    x.mod_floor(&BigInt::from(n)).to_i64().expect("residue fits")
}

/// `{∞, 2}` together with every odd prime dividing a numerator or
/// denominator of `a` or `b`. The symbol is `+1` at every other place.
pub fn hilbert_support(a: &Rational, b: &Rational) -> Result<BTreeSet<Place>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut places = BTreeSet::from([Place::Real, Place::two()]);
    for x in [a, b] {
        for n in [x.numer(), x.denom()] {
            for p in factorize(n.abs().magnitude())? {
                places.insert(Place::Finite(Prime::new_unchecked(p)));
            }
        }
    }
    Ok(places)
}

/// Checks `∏_ν (a, b)_ν = 1` over the support.
pub fn product_formula_holds(a: &Rational, b: &Rational) -> Result<bool> {
    product_formula_holds_with(a, b, hilbert)
}

/// Product formula over the support for an arbitrary symbol implementation.
pub fn product_formula_holds_with<F>(a: &Rational, b: &Rational, symbol: F) -> Result<bool>
where
    F: Fn(&Rational, &Rational, &Place) -> Result<i8>,
{
    let mut product = 1i8;
    for place in hilbert_support(a, b)? {
        product *= symbol(a, b, &place)?;
    }
    Ok(product == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn places() -> Vec<Place> {
        let mut v = vec![Place::Real];
        for p in [2, 3, 5, 7, 11, 13] {
            v.push(Place::prime(p).unwrap());
        }
        v
    }

    #[test]
    fn examples() {
        assert_eq!(hilbert(&int(-1), &int(-1), &Place::Real).unwrap(), -1);
        assert_eq!(hilbert(&int(-1), &int(-1), &Place::two()).unwrap(), -1);
        for place in places() {
            assert_eq!(hilbert(&int(2), &int(2), &place).unwrap(), 1, "{place}");
            assert_eq!(hilbert(&rat(-7, 3), &rat(25, 4), &place).unwrap(), 1);
        }
        assert_eq!(hilbert(&int(3), &int(2), &Place::prime(3).unwrap()).unwrap(), -1);
        assert_eq!(hilbert(&int(0), &int(2), &Place::Real), Err(Error::ZeroArgument));
    }

    #[test]
    fn support_examples() {
        let p = |n: u64| Place::prime(n).unwrap();
        assert_eq!(
            hilbert_support(&int(3), &int(5)).unwrap(),
            BTreeSet::from([Place::Real, p(2), p(3), p(5)])
        );
        assert_eq!(hilbert_support(&int(1), &int(1)).unwrap(), BTreeSet::from([Place::Real, p(2)]));
        assert_eq!(
            hilbert_support(&rat(4, 9), &int(7)).unwrap(),
            BTreeSet::from([Place::Real, p(2), p(3), p(7)])
        );
    }

    #[test]
    fn product_formula_examples() {
        assert!(product_formula_holds(&int(3), &int(2)).unwrap());
        assert!(product_formula_holds(&int(-1), &int(-1)).unwrap());
        assert!(product_formula_holds(&int(1), &rat(-22, 7)).unwrap());
    }

    #[test]
    fn flipped_symbol_breaks_product_formula() {
        let broken = |a: &Rational, b: &Rational, v: &Place| {
            let s = hilbert(a, b, v)?;
            Ok(if *v == Place::two() { -s } else { s })
        };
        assert!(!product_formula_holds_with(&int(3), &int(2), broken).unwrap());
    }

    #[test]
    fn agrees_with_classical_table_at_two() {
        // (a, b)_2 for a, b in {1, 3, 5, 7, 2, 6, 10, 14}.
        let units = [1, 3, 5, 7];
        let table = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, 1, 1], [1, -1, 1, -1]];
        for (i, &a) in units.iter().enumerate() {
            for (j, &b) in units.iter().enumerate() {
                assert_eq!(hilbert(&int(a), &int(b), &Place::two()).unwrap(), table[i][j], "({a},{b})");
            }
        }
        // (2, u)_2 = (-1)^ω(u)
        for (u, expect) in [(1, 1), (3, -1), (5, -1), (7, 1)] {
            assert_eq!(hilbert(&int(2), &int(u), &Place::two()).unwrap(), expect);
        }
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (prop_oneof![-2000i64..=-1, 1i64..=2000], 1i64..=2000).prop_map(|(n, d)| rat(n, d))
    }

    fn any_place() -> impl Strategy<Value = Place> {
        prop::sample::select(places())
    }

    proptest! {
        #[test]
        fn symmetric(a in nonzero_rational(), b in nonzero_rational(), v in any_place()) {
            prop_assert_eq!(hilbert(&a, &b, &v).unwrap(), hilbert(&b, &a, &v).unwrap());
        }

        #[test]
        fn bimultiplicative(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), v in any_place()) {
            let lhs = hilbert(&a, &(&b * &c), &v).unwrap();
            prop_assert_eq!(lhs, hilbert(&a, &b, &v).unwrap() * hilbert(&a, &c, &v).unwrap());
        }

        #[test]
        fn steinberg_relations(a in nonzero_rational(), v in any_place()) {
            prop_assert_eq!(hilbert(&a, &-&a, &v).unwrap(), 1);
            let one = int(1);
            if a != one {
                prop_assert_eq!(hilbert(&a, &(&one - &a), &v).unwrap(), 1);
            }
        }

        #[test]
        fn a_ab_equals_a_minus_b(a in nonzero_rational(), b in nonzero_rational(), v in any_place()) {
            prop_assert_eq!(hilbert(&a, &(&a * &b), &v).unwrap(), hilbert(&a, &-&b, &v).unwrap());
        }

        #[test]
        fn square_invariant(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), v in any_place()) {
            let c2 = &c * &c;
            prop_assert_eq!(hilbert(&(&a * &c2), &b, &v).unwrap(), hilbert(&a, &b, &v).unwrap());
            prop_assert_eq!(hilbert(&a, &c2, &v).unwrap(), 1);
        }

        #[test]
        fn local_square_is_hilbert_trivial(a in nonzero_rational(), b in nonzero_rational(), v in any_place()) {
            if crate::exactnum::is_square_at(&a, &v).unwrap() {
                prop_assert_eq!(hilbert(&a, &b, &v).unwrap(), 1);
            }
        }

        #[test]
        fn product_formula(a in nonzero_rational(), b in nonzero_rational()) {
            prop_assert!(product_formula_holds(&a, &b).unwrap());
        }
    }
}
