//! Exact polyhedral convex analysis and heights of toric varieties.

pub mod cli;
pub mod concave_calculus;
pub mod dd;
pub mod error;
pub mod heights;
pub mod io;
pub mod lattice_polytopes;
pub mod linalg;
pub mod logq;
pub mod measures;
pub mod numeric;
pub mod polytope_integration;
pub mod scalar;
pub mod univariate;

pub use error::{Error, Result};
pub use lattice_polytopes::{Aggregate, Face, Facet, Polyhedron};
pub use scalar::{Vector, Q};
