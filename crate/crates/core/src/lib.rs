//! Growth bounds for polynomials and for rational functions with prescribed
//! poles outside the unit disk, together with the numerical machinery that
//! checks them: circle minimization, seeded instance search, comparison
//! tables and limit checks.

// `!(x >= lo)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod complex_poly;
pub mod error;
pub mod rational;
pub mod report;
pub mod verify;

pub use bounds::{BoundFactor, BoundParams, TheoremId};
pub use complex_poly::{Complex, Polynomial, RootForm};
pub use error::{Error, Result};
pub use rational::{Instance, PoleSet, RationalFunction};
