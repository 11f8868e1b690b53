//! Exact monodromy zeta functions of Milnor fibers of non-degenerate
//! functions on affine toric varieties, computed from Newton polyhedra.

pub mod cli;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod newton;
pub mod oracles;
pub mod polyhedra;
pub mod volumes;
pub mod zeta;

pub use error::{Error, Result};
