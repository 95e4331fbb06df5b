//! Exact construction of minimal polynomial-inequality representations of
//! polyhedra and basic closed semialgebraic sets.
//!
//! Every set handled here is described by finitely many polynomial
//! inequalities `p_i >= 0` with exact rational coefficients. The crate
//! builds such descriptions with as few polynomials as the geometry allows
//! (dimension-many for polytopes and general polyhedra, `s` for basic
//! closed sets cut out by `s` "independent" inequalities), replacing the
//! non-effective existence arguments behind those counts with explicit
//! budgeted searches for exponents and constants. Everything a search
//! returns is re-checked against an independent membership oracle before it
//! is accepted.
//!
//! Module map:
//! - [`rational`], [`poly`], [`expr`], [`interval`]: exact arithmetic,
//!   sparse multivariate polynomials, structured polynomial expressions and
//!   rational interval evaluation.
//! - [`lp`]: a small exact-rational simplex solver used for geometry
//!   predicates and for fitting cushion polynomials.
//! - [`geometry`]: H-representations, irredundancy, face lattices, support
//!   chains and related polyhedral computations.
//! - [`separation`]: the separation toolkit (cushion polynomials, budgeted
//!   exponent searches, and the five separation operations).
//! - [`verification`]: stratified sampling, sampled and certified
//!   representation checks, and audit reports.
//! - [`representations`]: the end-to-end pipelines producing minimal
//!   representations, plus the faithful normal form.
//! - [`catalog`]: named example inputs used by the CLI and the test suite.

pub mod budget;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod interval;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod representations;
pub mod separation;
pub mod verification;

pub use budget::SearchBudget;
pub use error::{Error, Result};
pub use poly::{LinearForm, Monomial, SparsePoly};
pub use rational::Rational;
