//! Decision procedures for the unit-distance graph `G(Qⁿ, q)`: vertices are
//! the points of `Qⁿ`, edges join `x, y` with `q(x − y) = 1`.
//!
//! Everything reduces to embedding questions `q₁ ⤳ q₂` (some positive
//! definite `r` has `q₁ ⊥ r ≅ q₂`), which are settled by local invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::Result;
use crate::exactnum::{class_is_square_at, Place, SquareClass};
use crate::forms::{invariants, simplex_form, FormInvariants, QForm};
use crate::hilbert::hilbert_classes;

/// Whether a positive definite form of rank `m` exists with determinant class
/// `det` and Hasse invariants `hasse` (`+1` at every place not listed).
///
/// This is the realization theorem for signature `(m, 0)`.
pub fn exists_posdef_with(m: usize, det: &SquareClass, hasse: &BTreeMap<Place, i8>) -> bool {
    let trivial = hasse.values().all(|&e| e == 1);
    match m {
        0 => det.is_one() && trivial,
        1 => det.is_positive() && trivial,
        _ => {
            let product: i8 = hasse.values().product();
            if product != 1 || !det.is_positive() || hasse.get(&Place::Real).is_some_and(|&e| e != 1) {
                return false;
            }
            if m == 2 {
                // E_ν must be +1 wherever −D is a local square.
                let minus_det = det.negate();
                return hasse.iter().all(|(place, &e)| {
                    e == 1
                        || match place {
                            Place::Real => !minus_det.is_positive(),
                            Place::Finite(p) => !class_is_square_at(&minus_det, p),
                        }
                });
            }
            true
        }
    }
}

fn require_positive_definite(q: &QForm) -> Result<()> {
    q.check_positive_definite()
}

/// `q₁ ⤳ q₂` for positive definite forms.
pub fn embeds(q1: &QForm, q2: &QForm) -> Result<bool> {
    require_positive_definite(q1)?;
    require_positive_definite(q2)?;
    Ok(embeds_by_invariants(&invariants(q1)?, &invariants(q2)?))
}

/// Embedding decided from the invariants of two positive definite forms.
///
/// The orthogonal complement `X` must have `dim X = dim q₂ − dim q₁`,
/// `D(X) = D(q₁)·D(q₂)` and `E_ν(X) = E_ν(q₂)·E_ν(q₁)·(D(q₁), −D(q₂))_ν`.
pub fn embeds_by_invariants(inv1: &FormInvariants, inv2: &FormInvariants) -> bool {
    if inv1.dim > inv2.dim {
        return false;
    }
    if inv1.dim == inv2.dim {
        return inv1 == inv2;
    }
    let det_x = inv1.det_class.mul(&inv2.det_class);
    let minus_d2 = inv2.det_class.negate();
    let support: BTreeSet<Place> = inv1.support().union(&inv2.support()).cloned().collect();
    let hasse_x: BTreeMap<Place, i8> = support
        .iter()
        .map(|v| {
            let e = inv2.hasse_at(v) * inv1.hasse_at(v) * hilbert_classes(&inv1.det_class, &minus_d2, v);
            (v.clone(), e)
        })
        .collect();
    #[cfg(debug_assertions)]
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let v = Place::prime(p).expect("small prime");
        if !support.contains(&v) {
            debug_assert_eq!(
                hilbert_classes(&inv1.det_class, &minus_d2, &v),
                1,
                "complement Hasse invariant nontrivial outside the support at {v}"
            );
        }
    }
    exists_posdef_with(inv2.dim - inv1.dim, &det_x, &hasse_x)
}

/// Nonempty edge set, i.e. `q` represents 1, i.e. `I₁ ⤳ q`.
pub fn is_nonempty(q: &QForm) -> Result<bool> {
    embeds(&QForm::identity(1)?, q)
}

/// `ω(G(Qⁿ, q)) = 1 + max{k : S_k ⤳ q}`, with `k = 0` always admissible.
pub fn clique_number(q: &QForm) -> Result<usize> {
    require_positive_definite(q)?;
    let target = invariants(q)?;
    for k in (1..=q.dim()).rev() {
        if embeds_by_invariants(&invariants(&simplex_form(k)?)?, &target) {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Connected,
    Disconnected,
    Unknown,
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connectivity::Connected => "connected",
            Connectivity::Disconnected => "disconnected",
            Connectivity::Unknown => "unknown",
        })
    }
}

/// Connectivity as far as it is settled: empty graphs are disconnected,
/// dimension ≥ 5 is connected, and `I₂, I₃, I₄` (up to equivalence) are
/// disconnected. Everything else is `Unknown`.
pub fn connectivity(q: &QForm) -> Result<Connectivity> {
    if !is_nonempty(q)? {
        return Ok(Connectivity::Disconnected);
    }
    let n = q.dim();
    if n >= 5 {
        return Ok(Connectivity::Connected);
    }
    if (2..=4).contains(&n) && invariants(q)? == invariants(&QForm::identity(n)?)? {
        return Ok(Connectivity::Disconnected);
    }
    Ok(Connectivity::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub form: QForm,
    pub nonempty: bool,
    pub clique_number: usize,
    pub connectivity: Connectivity,
    /// Largest `k` with `S_k ⤳ q`; always `clique_number − 1`.
    pub max_simplex: usize,
}

impl GraphReport {
    /// Equal conclusions, ignoring which representative form was analyzed.
    pub fn same_verdict(&self, other: &GraphReport) -> bool {
        self.nonempty == other.nonempty
            && self.clique_number == other.clique_number
            && self.connectivity == other.connectivity
            && self.max_simplex == other.max_simplex
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.form.to_string(),
            "nonempty": self.nonempty,
            "clique": self.clique_number,
            "connectivity": self.connectivity.to_string(),
            "max_simplex": self.max_simplex,
        })
    }
}

pub fn analyze(q: &QForm) -> Result<GraphReport> {
    let clique = clique_number(q)?;
    let report = GraphReport {
        form: q.clone(),
        nonempty: is_nonempty(q)?,
        clique_number: clique,
        connectivity: connectivity(q)?,
        max_simplex: clique - 1,
    };
    debug_assert_eq!(report.nonempty, report.clique_number >= 2);
    debug_assert!(report.clique_number + 2 >= q.dim());
    Ok(report)
}
