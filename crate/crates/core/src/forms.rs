//! Rational quadratic forms `q(x) = xᵀ G x`, congruence diagonalization and
//! the complete set of rational invariants (dimension, determinant square
//! class, signature, Hasse–Minkowski invariant at every place).
//!
//! A polynomial cross term `c·xᵢxⱼ` corresponds to `G[i][j] = G[j][i] = c/2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, square_class, square_class_and_divisors, Place, Rational, SquareClass};
use crate::hilbert::{hilbert, hilbert_classes, hilbert_support};

/// Dense matrix of rationals, row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// A nondegenerate symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QForm {
    gram: Matrix,
}

impl QForm {
    /// Validates that `gram` is square, non-empty and symmetric.
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(QForm { gram })
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let n = entries.len();
        let mut gram = zeros(n);
        for (i, e) in entries.iter().enumerate() {
            gram[i][i] = e.clone();
        }
        QForm::new(gram)
    }

    pub fn identity(n: usize) -> Result<Self> {
        scaled_identity(n, &Rational::one())
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram[i][j].is_zero()))
    }

    /// `xᵀ G y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                if !y[j].is_zero() && !self.gram[i][j].is_zero() {
                    row += &self.gram[i][j] * &y[j];
                }
            }
            acc += &x[i] * row;
        }
        Ok(acc)
    }

    /// `q(x) = xᵀ G x`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.bilinear(x, x)
    }

    /// The form `x ↦ q(T x)`, whose Gram matrix is `Tᵀ G T`.
    pub fn compose(&self, t: &Matrix) -> Result<QForm> {
        let n = self.dim();
        if t.len() != n || t.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: t.len() });
        }
        let gt = mat_mul(&self.gram, t);
        QForm::new(mat_mul(&transpose(t), &gt))
    }

    /// Leading principal minors `Δ₁, …, Δₙ`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        let n = self.dim();
        (1..=n)
            .map(|k| determinant(&self.gram[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>()))
            .collect()
    }

    /// Sylvester's criterion; reports the first leading minor that is not positive.
    pub fn check_positive_definite(&self) -> Result<()> {
        // Pivots of unpivoted elimination are ratios of consecutive minors.
        let n = self.dim();
        let mut a = self.gram.clone();
        let mut minor = Rational::one();
        for k in 0..n {
            let pivot = a[k][k].clone();
            minor *= &pivot;
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite { index: k + 1, value: minor });
            }
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let c = &a[i][k] / &pivot;
                for j in k..n {
                    let delta = &c * &a[k][j];
                    a[i][j] -= delta;
                }
            }
        }
        Ok(())
    }

    pub fn is_positive_definite(&self) -> bool {
        self.check_positive_definite().is_ok()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.gram)
    }
}

/// Grammar rendering: `diag:a,b,…` for diagonal forms, `gram:[[…],…]` otherwise.
impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            let entries: Vec<String> = (0..self.dim()).map(|i| format_rational(&self.gram[i][i])).collect();
            write!(f, "diag:{}", entries.join(","))
        } else {
            let rows: Vec<String> = self
                .gram
                .iter()
                .map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, "gram:[{}]", rows.join(","))
        }
    }
}

/// `(1/d)·I_n`.
pub fn scaled_identity(n: usize, d: &Rational) -> Result<QForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if !d.is_positive() {
        return Err(Error::InvalidArgument(format!("scale {d} must be positive")));
    }
    let inv = d.recip();
    QForm::diagonal(&vec![inv; n])
}

/// `S_k = Σ_{i ≤ j} xᵢxⱼ`: ones on the diagonal, halves elsewhere.
pub fn simplex_form(k: usize) -> Result<QForm> {
    if k == 0 {
        return Err(Error::InvalidArgument("S_k needs k ≥ 1".into()));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let gram = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { half.clone() }).collect())
        .collect();
    QForm::new(gram)
}

/// Diagonal form congruent to a given form, with the change of basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    pub entries: Vec<Rational>,
    /// Columns are the new basis: `transformᵀ · gram · transform = diag(entries)`.
    pub transform: Matrix,
}

/// Symmetric Gaussian elimination. A zero pivot is repaired by swapping in a
/// later nonzero diagonal entry, or else by adding a row/column that meets
/// the pivot in a nonzero off-diagonal entry.
pub fn diagonalize(q: &QForm) -> Result<DiagonalForm> {
    let n = q.dim();
    let mut a = q.gram.clone();
    let mut t = identity_matrix(n);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
                for row in t.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = ((i + 1)..n).find(|&j| !a[i][j].is_zero()) {
                // Basis vector i becomes e_i + e_j; new a[i][i] = 2·a[i][j].
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                for row in t.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let pivot = a[i][i].clone();
        for j in (i + 1)..n {
            if a[j][i].is_zero() {
                continue;
            }
            let c = &a[j][i] / &pivot;
            for k in 0..n {
                let v = &c * &a[i][k];
                a[j][k] -= v;
            }
            for k in 0..n {
                let v = &c * &a[k][i];
                a[k][j] -= v;
            }
            for row in t.iter_mut() {
                let v = &c * &row[i];
                row[j] -= v;
            }
        }
    }
    let entries = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(DiagonalForm { entries, transform: t })
}

/// Complete rational invariants of a nondegenerate form.
///
/// `hasse` records `E_ν` on a finite support that always contains `∞` and
/// `2`; at every other place the invariant is `+1`.
#[derive(Clone, Debug)]
pub struct FormInvariants {
    pub dim: usize,
    pub det_class: SquareClass,
    /// `(r, s)`: number of positive and negative diagonal entries.
    pub signature: (usize, usize),
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn hasse_at(&self, place: &Place) -> i8 {
        self.hasse.get(place).copied().unwrap_or(1)
    }

    pub fn support(&self) -> BTreeSet<Place> {
        self.hasse.keys().cloned().collect()
    }

    /// Product of the recorded Hasse invariants; `+1` for any genuine form.
    pub fn hasse_product(&self) -> i8 {
        self.hasse.values().product()
    }

    pub fn to_json(&self) -> Value {
        let mut hasse = Map::new();
        for (place, e) in &self.hasse {
            hasse.insert(place.to_string(), json!(e));
        }
        json!({
            "dim": self.dim,
            "det_class": int_json(self.det_class.representative()),
            "signature": [self.signature.0, self.signature.1],
            "hasse": hasse,
        })
    }
}

/// Equality as invariants: supports may differ, missing places count as `+1`.
impl PartialEq for FormInvariants {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.det_class == other.det_class
            && self.signature == other.signature
            && self.support().union(&other.support()).all(|v| self.hasse_at(v) == other.hasse_at(v))
    }
}

impl Eq for FormInvariants {}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// Invariants of the form with diagonal `entries` (all nonzero).
pub fn diagonal_invariants(entries: &[Rational]) -> Result<FormInvariants> {
    let mut classes = Vec::with_capacity(entries.len());
    let mut support = BTreeSet::from([Place::Real, Place::two()]);
    for e in entries {
        let (class, divisors) = square_class_and_divisors(e)?;
        support.extend(divisors.into_iter().map(Place::Finite));
        classes.push(class);
    }
    // ∏_{i<j} (aᵢ, aⱼ) = ∏_j (a₁⋯a_{j−1}, aⱼ)
    let mut prefixes = Vec::with_capacity(classes.len());
    let mut acc = SquareClass::one();
    for c in &classes {
        prefixes.push(acc.clone());
        acc = acc.mul(c);
    }
    let hasse = support
        .into_iter()
        .map(|place| {
            let e = classes
                .iter()
                .zip(&prefixes)
                .skip(1)
                .map(|(c, pre)| hilbert_classes(pre, c, &place))
                .product();
            (place, e)
        })
        .collect();
    let positive = entries.iter().filter(|e| e.is_positive()).count();
    Ok(FormInvariants {
        dim: entries.len(),
        det_class: acc,
        signature: (positive, entries.len() - positive),
        hasse,
    })
}

pub fn invariants(q: &QForm) -> Result<FormInvariants> {
    diagonal_invariants(&diagonalize(q)?.entries)
}

/// Rational equivalence via the complete invariants.
pub fn equivalent(q1: &QForm, q2: &QForm) -> Result<bool> {
    if q1.dim() != q2.dim() {
        return Ok(false);
    }
    Ok(invariants(q1)? == invariants(q2)?)
}

/// `λ_k`: `k + 1` for even `k`, `(k + 1)/2` for odd `k`.
pub fn lambda(k: u64) -> u64 {
    if k.is_multiple_of(2) {
        k + 1
    } else {
        k.div_ceil(2)
    }
}

/// Closed-form invariants of `S_k`: determinant class `λ_k`, and
/// `E_ν = (k+1, −2)_ν` for even `k`, `(k+1, −1)_ν` for odd `k`.
pub fn s_k_invariants(k: usize) -> Result<FormInvariants> {
    if k == 0 {
        return Err(Error::InvalidArgument("S_k needs k ≥ 1".into()));
    }
    let k1 = Rational::from_integer(BigInt::from(k + 1));
    let second = Rational::from_integer(BigInt::from(if k.is_multiple_of(2) { -2 } else { -1 }));
    let mut hasse = BTreeMap::new();
    for place in hilbert_support(&k1, &second)? {
        let e = hilbert(&k1, &second, &place)?;
        hasse.insert(place, e);
    }
    Ok(FormInvariants {
        dim: k,
        det_class: square_class(&Rational::from_integer(BigInt::from(lambda(k as u64))))?,
        signature: (k, 0),
        hasse,
    })
}

pub fn identity_matrix(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn zeros(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, brow)| !x.is_zero() && !brow[j].is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination with row pivoting.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let c = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &c * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Rank over Q by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Matrix = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in (r + 1)..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}
