//! Explicit rational point configurations and an exact verifier for their
//! pairwise q-distances.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, rational_sqrt, Rational};
use crate::forms::{rank, Matrix, QForm};

pub type Point = Vec<Rational>;

/// Finite list of points of `Qⁿ`, all of length `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    dim: usize,
    points: Vec<Vec<String>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("point dimension must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `p_i − p_0` for `i ≥ 1`.
    pub fn differences(&self) -> Vec<Point> {
        match self.points.split_first() {
            None => Vec::new(),
            Some((base, rest)) => rest.iter().map(|p| sub(p, base)).collect(),
        }
    }

    /// `{"dim":n,"points":[["1","1/15"],...]}`
    pub fn to_json(&self) -> Value {
        let points: Vec<Vec<String>> =
            self.points.iter().map(|p| p.iter().map(format_rational).collect()).collect();
        json!({ "dim": self.dim, "points": points })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let raw: PointSetJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("malformed point set: {e}")))?;
        let points = raw
            .points
            .iter()
            .map(|p| p.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(raw.dim, points)
    }
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `M_ij = (q(v_i) + q(v_j) − q(v_i − v_j)) / 2`, the q-Gram matrix of the vectors.
pub fn gram_from_points(vectors: &PointSet, q: &QForm) -> Result<Matrix> {
    if vectors.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: vectors.dim() });
    }
    let v = vectors.points();
    let norms = v.iter().map(|x| q.evaluate(x)).collect::<Result<Vec<_>>>()?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut m = vec![vec![Rational::zero(); v.len()]; v.len()];
    for i in 0..v.len() {
        for j in i..v.len() {
            let entry = (&norms[i] + &norms[j] - q.evaluate(&sub(&v[i], &v[j]))?) * &half;
            m[j][i] = entry.clone();
            m[i][j] = entry;
        }
    }
    Ok(m)
}

/// The `n + 1` points of the rational Beckman–Quarles configuration: pairs
/// `e_{2i−1} ± e_{2i}`, then `(1, 1/15, 0, …)`, and for odd `n` a final
/// `(0, …, 0, 7/4)`.
pub fn beckman_quarles_simplex(n: usize) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidArgument("simplex needs n ≥ 2".into()));
    }
    let zero = || vec![Rational::zero(); n];
    let one = Rational::one();
    let mut points = Vec::with_capacity(n + 1);
    for block in 0..n / 2 {
        for sign in [one.clone(), -one.clone()] {
            let mut p = zero();
            p[2 * block] = one.clone();
            p[2 * block + 1] = sign;
            points.push(p);
        }
    }
    let mut tilted = zero();
    tilted[0] = one.clone();
    tilted[1] = Rational::new(BigInt::one(), BigInt::from(15));
    points.push(tilted);
    if n % 2 == 1 {
        let mut last = zero();
        last[n - 1] = Rational::new(BigInt::from(7), BigInt::from(4));
        points.push(last);
    }
    PointSet::new(n, points)
}

/// Triangle `(0, 0), (n − 1, 2), (−n + 1, 2)` with sides `n + 1, n + 1,
/// 2n − 2` under `x² + n·y²`.
pub fn rational_triangle(n: i64) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidArgument("triangle needs n ≥ 2".into()));
    }
    let r = |v: i64| Rational::from_integer(BigInt::from(v));
    PointSet::new(2, vec![vec![r(0), r(0)], vec![r(n - 1), r(2)], vec![r(1 - n), r(2)]])
}

/// The form `x² + n·y²` that `rational_triangle(n)` lives in.
pub fn triangle_form(n: i64) -> Result<QForm> {
    QForm::diagonal(&[Rational::one(), Rational::from_integer(BigInt::from(n))])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    /// Exact `q(p_i − p_j)`.
    pub squared: Vec<Vec<Rational>>,
    /// `Some(ℓ)` where the squared distance is `ℓ²` for rational `ℓ ≥ 0`.
    pub side_lengths: Vec<Vec<Option<Rational>>>,
    pub all_rational: bool,
    /// Rank of `{p_i − p_0}`.
    pub rank: usize,
    pub affinely_independent: bool,
}

impl DistanceReport {
    pub fn to_json(&self) -> Value {
        let lengths: Vec<Vec<Value>> = self
            .side_lengths
            .iter()
            .map(|row| row.iter().map(|x| x.as_ref().map_or(Value::Null, |l| json!(format_rational(l)))).collect())
            .collect();
        let squared: Vec<Vec<String>> =
            self.squared.iter().map(|row| row.iter().map(format_rational).collect()).collect();
        json!({
            "all_rational": self.all_rational,
            "side_lengths": lengths,
            "squared": squared,
            "rank": self.rank,
            "affinely_independent": self.affinely_independent,
        })
    }
}

pub fn verify_distances(ps: &PointSet, q: &QForm) -> Result<DistanceReport> {
    if ps.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: ps.dim() });
    }
    let pts = ps.points();
    let m = pts.len();
    let mut squared = vec![vec![Rational::zero(); m]; m];
    let mut side_lengths = vec![vec![Some(Rational::zero()); m]; m];
    let mut all_rational = true;
    for i in 0..m {
        for j in (i + 1)..m {
            let d2 = q.evaluate(&sub(&pts[i], &pts[j]))?;
            let len = rational_sqrt(&d2);
            all_rational &= len.is_some();
            squared[i][j] = d2.clone();
            squared[j][i] = d2;
            side_lengths[i][j] = len.clone();
            side_lengths[j][i] = len;
        }
    }
    let r = rank(&ps.differences());
    Ok(DistanceReport {
        squared,
        side_lengths,
        all_rational,
        rank: r,
        affinely_independent: m >= 1 && r == m - 1,
    })
}
