//! Exact rationals, integer factorization, square classes and local squareness.
//!
//! Everything here is a pure function over immutable values. Rationals are
//! `num_rational::BigRational`, which is always kept reduced with a positive
//! denominator, so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Environment variable holding the Pollard rho iteration cap.
pub const FACTOR_BUDGET_ENV: &str = "QFORM_FACTOR_BUDGET";

const DEFAULT_FACTOR_BUDGET: u64 = 50_000_000;
const TRIAL_DIVISION_LIMIT: u32 = 10_000;

/// Parses `p` or `p/q` in base 10. No whitespace is accepted.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Renders as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A verified prime number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(p: BigUint) -> Result<Self> {
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn two() -> Self {
        Prime(BigUint::from(2u32))
    }

    /// Caller guarantees primality (e.g. the value came out of `factorize`).
    pub(crate) fn new_unchecked(p: BigUint) -> Self {
        debug_assert!(is_prime(&p));
        Prime(p)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigUint::from(2u32)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A place of Q: the real place or a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::from_u64(p).map(Place::Finite)
    }

    pub fn two() -> Self {
        Place::Finite(Prime::two())
    }

    pub fn as_prime(&self) -> Option<&Prime> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Finite(p) => p.fmt(f),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Place::Real),
            _ => {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::InvalidArgument(format!(
                        "place must be `inf` or a prime, got {s:?}"
                    )));
                }
                let p = BigUint::from_str(s).map_err(|_| Error::InvalidArgument(s.into()))?;
                Prime::new(p).map(Place::Finite)
            }
        }
    }
}

/// Class of a nonzero rational modulo nonzero rational squares, represented
/// by the signed squarefree integer in the class. The prime factors of the
/// representative are carried along so that products never refactor.
#[derive(Clone, Debug)]
pub struct SquareClass {
    rep: BigInt,
    primes: Vec<Prime>,
}

impl PartialEq for SquareClass {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for SquareClass {}

impl std::hash::Hash for SquareClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rep.hash(state)
    }
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass { rep: BigInt::one(), primes: Vec::new() }
    }

    /// Builds the class of a squarefree integer, rejecting zero and repeated factors.
    pub fn from_squarefree(rep: BigInt) -> Result<Self> {
        if rep.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let factors = factorize(rep.magnitude())?;
        if factors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("{rep} is not squarefree")));
        }
        let primes = factors.into_iter().map(Prime::new_unchecked).collect();
        Ok(SquareClass { rep, primes })
    }

    pub fn representative(&self) -> &BigInt {
        &self.rep
    }

    /// Primes dividing the representative, ascending.
    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn is_positive(&self) -> bool {
        self.rep.is_positive()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn divisible_by(&self, p: &Prime) -> bool {
        self.primes.binary_search(p).is_ok()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.rep.clone())
    }

    pub fn negate(&self) -> Self {
        SquareClass { rep: -&self.rep, primes: self.primes.clone() }
    }

    /// Class of the product.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let mut primes = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.primes, &other.primes);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                primes.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                primes.push(b[j].clone());
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        let mut rep = primes.iter().fold(BigInt::one(), |acc, p| acc * BigInt::from(p.value().clone()));
        if self.rep.sign() != other.rep.sign() {
            rep = -rep;
        }
        SquareClass { rep, primes }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Square class of a nonzero rational. `r / s` is a rational square and
/// `s` has the sign of `r`.
pub fn square_class(r: &Rational) -> Result<SquareClass> {
    square_class_and_divisors(r).map(|(class, _)| class)
}

/// Square class together with every prime dividing the numerator or the
/// denominator (ascending, without repetition).
pub fn square_class_and_divisors(r: &Rational) -> Result<(SquareClass, Vec<Prime>)> {
    if r.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut parity: BTreeMap<BigUint, bool> = BTreeMap::new();
    for p in factorize(r.numer().magnitude())?
        .into_iter()
        .chain(factorize(r.denom().magnitude())?)
    {
        *parity.entry(p).or_insert(false) ^= true;
    }
    let divisors: Vec<Prime> = parity.keys().cloned().map(Prime::new_unchecked).collect();
    let primes: Vec<Prime> = parity
        .into_iter()
        .filter(|(_, odd)| *odd)
        .map(|(p, _)| Prime::new_unchecked(p))
        .collect();
    let mut rep = primes.iter().fold(BigInt::one(), |acc, p| acc * BigInt::from(p.value().clone()));
    if r.is_negative() {
        rep = -rep;
    }
    Ok((SquareClass { rep, primes }, divisors))
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    // Square class 1 means numerator and denominator (coprime) are both squares.
    if !square_class(r).ok()?.is_one() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    debug_assert_eq!(&(&n * &n), r.numer());
    debug_assert_eq!(&(&d * &d), r.denom());
    Some(Rational::new(n, d))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<i8> {
    if p == &BigUint::from(2u32) {
        return Err(Error::EvenModulus);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let r = a.mod_floor(&pi).to_biguint().expect("mod_floor is nonnegative");
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Whether the nonzero rational `x` is a square in the completion `Q_ν`.
pub fn is_square_at(x: &Rational, place: &Place) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match place {
        Place::Real => Ok(x.is_positive()),
        Place::Finite(p) => Ok(class_is_square_at(&square_class(x)?, p)),
    }
}

pub(crate) fn class_is_square_at(s: &SquareClass, p: &Prime) -> bool {
    if s.divisible_by(p) {
        return false;
    }
    if p.is_two() {
        s.rep.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        legendre_unchecked(&s.rep, p.value()) == 1
    }
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// Iteration cap for Pollard rho, read once from `QFORM_FACTOR_BUDGET`.
pub fn default_factor_budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(FACTOR_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_FACTOR_BUDGET)
    })
}

/// Prime factorization with multiplicity, ascending. `factorize(1)` is empty.
pub fn factorize(n: &BigUint) -> Result<Vec<BigUint>> {
    factorize_with_budget(n, default_factor_budget())
}

pub fn factorize_with_budget(n: &BigUint, budget: u64) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    for p in small_primes() {
        let pb = BigUint::from(*p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            out.push(pb.clone());
        }
    }
    if !rest.is_one() {
        let mut remaining = budget;
        split_large(rest, &mut remaining, &mut out).map_err(|_| Error::FactorBudgetExhausted(n.clone()))?;
    }
    out.sort();
    Ok(out)
}

struct OutOfBudget;

fn split_large(n: BigUint, budget: &mut u64, out: &mut Vec<BigUint>) -> Result<(), OutOfBudget> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    if let Some(root) = exact_sqrt(&n) {
        split_large(root.clone(), budget, out)?;
        return split_large(root, budget, out);
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(rho_u64(small, budget).ok_or(OutOfBudget)?),
        None => rho_big(&n, budget).ok_or(OutOfBudget)?,
    };
    let other = &n / &d;
    split_large(d, budget, out)?;
    split_large(other, budget, out)
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=limit).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Strong-pseudoprime primality test. Deterministic below 3.3·10²⁴ (first
/// thirteen prime bases); above that, extra seeded random bases are used.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in small_primes().iter().take(100) {
        if (n % *p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let strong_probable = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };
    if !MR_BASES.iter().all(|&a| strong_probable(&BigUint::from(a))) {
        return false;
    }
    if n.bits() <= 81 {
        return true;
    }
    let mut rng = StdRng::seed_from_u64(0x05ee_d0fc_1a55);
    (0..24).all(|_| {
        let a = BigUint::from(rng.gen::<u64>()) % (n - 3u32) + 2u32;
        strong_probable(&a)
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of a
/// composite `n`, or `None` once the budget is spent.
fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut rng = StdRng::seed_from_u64(n);
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let step = |v: u64| ((mul_mod(v, v, n) as u128 + c as u128) % n as u128) as u64;
        let m = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                *budget = budget.checked_sub(lim)?;
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                *budget = budget.checked_sub(1)?;
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return Some(two);
    }
    let mut rng = StdRng::seed_from_u64(n.iter_u64_digits().next().unwrap_or(0));
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    loop {
        let c = BigUint::from(rng.gen::<u64>()) % n;
        let mut y = BigUint::from(rng.gen::<u64>()) % n;
        let step = |v: &BigUint| (v * v + &c) % n;
        let m = 128u64;
        let mut g = BigUint::one();
        let mut q = BigUint::one();
        let mut r = 1u64;
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = step(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                *budget = budget.checked_sub(lim)?;
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = step(&ys);
                *budget = budget.checked_sub(1)?;
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn trial_division(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                out.push(d);
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(&big(12)).unwrap(), vec![big(2), big(2), big(3)]);
        assert!(factorize(&big(1)).unwrap().is_empty());
        let expected: Vec<BigUint> = trial_division(10403).into_iter().map(big).collect();
        assert_eq!(expected, vec![big(101), big(103)]);
        assert_eq!(factorize(&big(10403)).unwrap(), expected);
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(&(big(p) * big(q))).unwrap(), vec![big(q), big(p)]);
        // 128-bit product exercises the big-integer rho path.
        let a = big(18_446_744_073_709_551_557); // largest 64-bit prime
        let b = big(4_294_967_291);
        assert_eq!(factorize(&(&a * &b)).unwrap(), vec![b, a]);
        let sq = big(1_000_003) * big(1_000_003) * big(7);
        assert_eq!(factorize(&sq).unwrap(), vec![big(7), big(1_000_003), big(1_000_003)]);
    }

    #[test]
    fn factorize_budget_exhaustion() {
        let n = big(1_000_000_007) * big(998_244_353);
        assert_eq!(factorize_with_budget(&n, 0), Err(Error::FactorBudgetExhausted(n)));
    }

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 97, 7919, 1_000_000_007, 18_446_744_073_709_551_557];
        for p in primes {
            assert!(is_prime(&big(p)), "{p}");
        }
        // strong pseudoprimes to several bases
        for c in [1u64, 0, 561, 3_215_031_751, 3_825_123_056_546_413_051] {
            assert!(!is_prime(&big(c)), "{c}");
        }
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_prime(&m61));
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m61)));
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(square_class(&rat(4, 9)).unwrap().representative(), &BigInt::from(1));
        assert_eq!(square_class(&rat(3, 4)).unwrap().representative(), &BigInt::from(3));
        assert_eq!(square_class(&rat(-8, 3)).unwrap().representative(), &BigInt::from(-6));
        assert_eq!(square_class(&int(0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn square_class_product() {
        let a = square_class(&rat(6, 5)).unwrap();
        let b = square_class(&rat(-10, 7)).unwrap();
        let ab = square_class(&rat(-60, 35)).unwrap();
        assert_eq!(a.mul(&b), ab);
        assert_eq!(ab.representative(), &BigInt::from(-21));
        assert_eq!(ab.primes(), &[Prime::from_u64(3).unwrap(), Prime::from_u64(7).unwrap()]);
    }

    #[test]
    fn squarefree_constructor() {
        assert!(SquareClass::from_squarefree(BigInt::from(-30)).is_ok());
        assert!(SquareClass::from_squarefree(BigInt::from(12)).is_err());
        assert_eq!(SquareClass::from_squarefree(BigInt::from(0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn legendre_examples() {
        let brute = |a: i64, p: i64| -> i8 {
            if a.rem_euclid(p) == 0 {
                0
            } else if (1..p).any(|x| (x * x - a).rem_euclid(p) == 0) {
                1
            } else {
                -1
            }
        };
        assert_eq!(brute(2, 3), -1);
        assert_eq!(legendre(&BigInt::from(2), &big(3)).unwrap(), -1);
        assert_eq!(legendre(&BigInt::from(4), &big(5)).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(3), &big(3)).unwrap(), 0);
        for p in [3i64, 5, 7, 11, 13, 97] {
            for a in -40..40 {
                assert_eq!(legendre(&BigInt::from(a), &big(p as u64)).unwrap(), brute(a, p), "({a}/{p})");
            }
        }
        assert_eq!(legendre(&BigInt::from(3), &big(2)), Err(Error::EvenModulus));
        assert_eq!(legendre(&BigInt::from(3), &big(9)), Err(Error::NotPrime(big(9))));
    }

    #[test]
    fn squareness_examples() {
        assert!(is_square_at(&int(2), &Place::Real).unwrap());
        assert!(is_square_at(&int(2), &Place::prime(7).unwrap()).unwrap());
        assert!(!is_square_at(&int(2), &Place::two()).unwrap());
        assert!(is_square_at(&int(17), &Place::two()).unwrap());
        assert!(is_square_at(&rat(-7, 4), &Place::two()).unwrap());
        assert!(!is_square_at(&int(-1), &Place::Real).unwrap());
        assert!(!is_square_at(&int(3), &Place::prime(3).unwrap()).unwrap());
        assert!(is_square_at(&int(9), &Place::prime(3).unwrap()).unwrap());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        for bad in ["", "1/0", "1 /2", "1/-2", "a", "1/2/3", "-", "+/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("7".parse::<Place>().unwrap(), Place::prime(7).unwrap());
        assert!("8".parse::<Place>().is_err());
        assert!("x".parse::<Place>().is_err());
        assert!(Place::Real < Place::two());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_sqrt(&rat(676, 225)), Some(rat(26, 15)));
        assert_eq!(rational_sqrt(&rat(2, 9)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }
}
