//! Exact symbolic calculus of simplicial operators, face-map polyhedra,
//! Whitehead brackets and Moore-complex cycles.

pub mod cubes;
pub mod error;
pub mod intmat;
pub mod polyhedra;
pub mod resolution;
pub mod sign;
pub mod simplicial;
pub mod steenrod;
pub mod whitehead;

pub use error::{Error, Result};
