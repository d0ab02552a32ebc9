//! Exact decision procedures for rational unit-distance graphs `G(Qⁿ, q)`.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: rationals, factorization, square classes, local squareness.
//! - [`hilbert`]: Hilbert symbols `(a, b)_ν` and the product formula.
//! - [`forms`]: Gram matrices, diagonalization, complete rational invariants.
//! - [`graphinv`]: embedding, nonemptiness, clique number and connectivity.
//! - [`geometry`]: explicit rational configurations and a distance verifier.
//! - [`oracle`]: bounded brute-force searches used for cross-checking.
//!
//! All values are immutable and every operation is a pure function.

pub mod error;
pub mod exactnum;
pub mod forms;
pub mod geometry;
pub mod graphinv;
pub mod hilbert;
pub mod oracle;

pub use error::{Error, Result};
pub use exactnum::{Place, Prime, Rational, SquareClass};
pub use forms::{DiagonalForm, FormInvariants, Matrix, QForm};
pub use geometry::{DistanceReport, PointSet};
pub use graphinv::{Connectivity, GraphReport};
pub use oracle::SearchBounds;
