//! Exact computer algebra for Frobenius manifolds and their submanifolds.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point in any structural check. The crate is organized as:
//!
//! - [`scalar`], [`poly`], [`qseries`]: the exact arithmetic layer —
//!   rationals, sparse polynomials with rational exponents, truncated
//!   exponential series.
//! - [`frobenius`]: prepotentials, metrics, structure constants, the WDVV
//!   associativity and quasihomogeneity checks, intersection forms.
//! - [`submanifold`]: parametrized submanifolds, induced metric and
//!   multiplication, tangency residuals and naturality, second fundamental
//!   forms and the Gauss-Codazzi equations.
//! - [`coxeter`]: the catalog of Coxeter-group prepotentials and their
//!   two-dimensional submanifold families.
//! - [`gwcounts`]: rational curve counts on the plane and the quadric,
//!   their recursion relations, and the associated truncated prepotentials.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be shared freely across threads.

// tensor contractions with shared mathematical indices read better as
// explicit index loops
#![allow(clippy::needless_range_loop)]

pub mod coxeter;
pub mod error;
pub mod frobenius;
pub mod gwcounts;
pub mod poly;
pub mod qseries;
pub mod scalar;
pub mod submanifold;

pub use error::{Error, Result};
pub use poly::{Monomial, PuiseuxPoly, VarKind, VarSet};
pub use qseries::QSeries;
pub use scalar::Rational;
