//! Holes of affine semigroups.
//!
//! For an integer matrix `A` whose columns span a pointed cone, the semigroup
//! `Q` is the set of nonnegative integer combinations of the columns and its
//! saturation is `cone(A) ∩ lattice(A)`. The points of the saturation that are
//! missing from `Q` are its holes. This crate computes the fundamental holes,
//! a finite description of all holes as shifted monoids, a bound on hole
//! entries when there are finitely many, and the minimal saturation points.
//! A transportation module treats the three-way `r x s x t` tables.

pub mod diophantine;
pub mod error;
pub mod holes;
pub mod limits;
pub mod linalg;
pub mod monomial;
pub mod polyhedral;
pub mod saturation;
pub mod transport;

pub use error::{Error, Result};
pub use limits::Limits;
