//! Exact cohomology rings of stacks of cameral covers and of Higgs bundles,
//! computed from a rational reflection group or a central hyperplane
//! arrangement.
//!
//! The pipeline is: [`arrangement`] (intersection poset and irreducible
//! components) → [`monoid`] (the graded monoid whose monoid ring is the
//! cohomology of the stack of cameral covers) → [`strata`] (a faithful model
//! by restriction to strata, Betti numbers, invariants) → [`higgs`].

pub mod arrangement;
pub mod error;
pub mod exactlin;
pub mod higgs;
pub mod json;
pub mod monoid;
pub mod partitions;
pub mod poly;
pub mod reflection;
pub mod strata;

pub use error::{Error, Result};
