//! Bound-limited brute-force references used to cross-check the invariant
//! engine. Every positive answer is verified exactly; a negative answer only
//! means nothing was found inside the bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{valuation, Place, Rational};
use crate::forms::QForm;
use crate::geometry::{sub, Point, PointSet};

/// Largest modulus `p^e` the Hilbert-symbol search will enumerate.
const MAX_BRUTE_MODULUS: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Common denominator `L`: candidates live in `(1/L)·Zⁿ`.
    pub denominator_bound: u64,
    /// Largest absolute numerator `H`.
    pub height_bound: u64,
    pub max_candidates: usize,
}

impl SearchBounds {
    pub fn new(denominator_bound: u64, height_bound: u64, max_candidates: usize) -> Result<Self> {
        if denominator_bound == 0 || height_bound == 0 || max_candidates == 0 {
            return Err(Error::InvalidArgument("search bounds must be at least 1".into()));
        }
        Ok(SearchBounds { denominator_bound, height_bound, max_candidates })
    }
}

/// Integer model of `q` on `(1/L)·Zⁿ`: `q(a/L) = 1 ⟺ aᵀ G a = target`.
struct IntegerModel {
    gram: Vec<Vec<i128>>,
    target: i128,
}

impl IntegerModel {
    fn new(q: &QForm, denominator: u64) -> Result<Self> {
        let scale = q
            .gram()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let too_big = || Error::InvalidArgument("form coefficients too large for the search".into());
        let gram = q
            .gram()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Rational::from_integer(scale.clone())).to_integer().to_i128().ok_or_else(too_big))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let target = (scale * BigInt::from(denominator).pow(2)).to_i128().ok_or_else(too_big)?;
        Ok(IntegerModel { gram, target })
    }

    fn value(&self, a: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (i, row) in self.gram.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            let mut s: i128 = 0;
            for (j, g) in row.iter().enumerate() {
                s = s.checked_add(g.checked_mul(a[j] as i128)?)?;
            }
            acc = acc.checked_add(s.checked_mul(a[i] as i128)?)?;
        }
        Some(acc)
    }

    fn is_unit(&self, a: &[i64]) -> bool {
        self.value(a) == Some(self.target)
    }
}

/// Coordinate values in search order: `0, 1, −1, 2, −2, …, H, −H`.
fn coordinate_order(h: i64) -> Vec<i64> {
    std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k])).collect()
}

/// Integer numerators `a ∈ [−H, H]ⁿ` with `q(a/L) = 1`, in lexicographic
/// order with each coordinate ranked by [`coordinate_order`].
fn unit_numerators(q: &QForm, b: &SearchBounds) -> Result<Vec<Vec<i64>>> {
    let model = IntegerModel::new(q, b.denominator_bound)?;
    let n = q.dim();
    let values = coordinate_order(b.height_bound as i64);
    let per_first: Vec<Vec<Vec<i64>>> = values
        .par_iter()
        .map(|&first| {
            let mut found = Vec::new();
            let mut idx = vec![0usize; n];
            let mut a = vec![0i64; n];
            a[0] = first;
            loop {
                if model.is_unit(&a) {
                    found.push(a.clone());
                    if found.len() >= b.max_candidates {
                        break;
                    }
                }
                // odometer over coordinates 1..n
                let mut i = n;
                loop {
                    if i == 1 {
                        return found;
                    }
                    i -= 1;
                    if idx[i] + 1 < values.len() {
                        idx[i] += 1;
                        a[i] = values[idx[i]];
                        break;
                    }
                    idx[i] = 0;
                    a[i] = values[0];
                }
            }
            found
        })
        .collect();
    let mut out: Vec<Vec<i64>> = per_first.into_iter().flatten().collect();
    out.truncate(b.max_candidates);
    Ok(out)
}

fn to_point(a: &[i64], denominator: u64) -> Point {
    let d = BigInt::from(denominator);
    a.iter().map(|&x| Rational::new(BigInt::from(x), d.clone())).collect()
}

/// All `x ∈ (1/L)·Zⁿ` with numerators bounded by `H` and `q(x) = 1`.
pub fn search_unit_vectors(q: &QForm, b: &SearchBounds) -> Result<Vec<Point>> {
    q.check_positive_definite()?;
    let found = unit_numerators(q, b)?;
    Ok(found.iter().map(|a| to_point(a, b.denominator_bound)).collect())
}

/// A `c`-clique containing the origin whose other vertices are unit vectors
/// within the bounds, if one exists there.
pub fn search_clique(q: &QForm, c: usize, b: &SearchBounds) -> Result<Option<PointSet>> {
    q.check_positive_definite()?;
    if c < 2 {
        return Err(Error::InvalidArgument("clique size must be at least 2".into()));
    }
    let model = IntegerModel::new(q, b.denominator_bound)?;
    let units = unit_numerators(q, b)?;
    let adjacent = |u: &[i64], v: &[i64]| -> bool {
        let d: Vec<i64> = u.iter().zip(v).map(|(x, y)| x - y).collect();
        model.is_unit(&d)
    };
    let adjacency: Vec<Vec<usize>> = (0..units.len())
        .into_par_iter()
        .map(|i| ((i + 1)..units.len()).filter(|&j| adjacent(&units[i], &units[j])).collect())
        .collect();

    fn extend(chosen: &mut Vec<usize>, candidates: &[usize], need: usize, adjacency: &[Vec<usize>]) -> bool {
        if chosen.len() == need {
            return true;
        }
        if chosen.len() + candidates.len() < need {
            return false;
        }
        for (k, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> =
                candidates[k + 1..].iter().copied().filter(|w| adjacency[v].binary_search(w).is_ok()).collect();
            chosen.push(v);
            if extend(chosen, &next, need, adjacency) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let all: Vec<usize> = (0..units.len()).collect();
    let mut chosen = Vec::new();
    if !extend(&mut chosen, &all, c - 1, &adjacency) {
        return Ok(None);
    }
    let mut points = vec![vec![Rational::zero(); q.dim()]];
    points.extend(chosen.iter().map(|&i| to_point(&units[i], b.denominator_bound)));
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            debug_assert!(q.evaluate(&sub(&points[i], &points[j]))?.is_one());
        }
    }
    PointSet::new(q.dim(), points).map(Some)
}

/// Hilbert symbol by exhaustive search: at a prime `p`, whether
/// `z² ≡ a x² + b y² (mod p^e)` has a solution with `p ∤ gcd(x, y, z)`,
/// where `e = v_p(4ab) + 3` after clearing denominators.
pub fn brute_hilbert(a: &Rational, b: &Rational, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p = match place {
        Place::Real => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) => p.value().clone(),
    };
    // a·den² has the same square class as a and is an integer.
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    let e = valuation(&(BigInt::from(4) * &a * &b), &p) + 3;
    let p64 = p.to_u64().ok_or_else(|| Error::InvalidArgument("prime too large for brute force".into()))?;
    let modulus = (0..e)
        .try_fold(1u64, |m, _| m.checked_mul(p64).filter(|&m| m <= MAX_BRUTE_MODULUS))
        .ok_or_else(|| Error::InvalidArgument("modulus too large for brute force".into()))?;
    let reduce = |x: &BigInt| x.mod_floor(&BigInt::from(modulus)).to_u64().expect("residue fits");
    let (a, b) = (reduce(&a), reduce(&b));

    let mut is_square = vec![false; modulus as usize];
    for z in 0..modulus {
        is_square[((z as u128 * z as u128) % modulus as u128) as usize] = true;
    }
    let squares: Vec<u64> = (0..modulus).filter(|&s| is_square[s as usize]).collect();
    // A square residue is the square of a unit exactly when p does not divide it.
    let unit = |s: u64| !s.is_multiple_of(p64);
    let found = squares.par_iter().any(|&x| {
        squares.iter().any(|&y| {
            let t = ((a as u128 * x as u128 + b as u128 * y as u128) % modulus as u128) as u64;
            is_square[t as usize] && (unit(x) || unit(y) || unit(t))
        })
    });
    Ok(if found { 1 } else { -1 })
}

/// Rank over Q by fraction-free (Bareiss) elimination on integer rows.
pub fn exact_rank(vectors: &[Point]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in (r + 1)..rows.len() {
            for j in (c + 1)..cols {
                let num = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                rows[i][j] = q;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}
