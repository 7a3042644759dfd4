//! Adjacent 2-minor ideals of collections of cells.

pub mod encoding;
pub mod error;
pub mod grid;
pub mod polyalg;

pub use error::{Error, Result};
pub use grid::{Cell, CellCollection, Edge, Pattern, Symmetry, SymmetryMode, Vertex};
pub mod enumerate;
pub mod ideals;
pub mod primes;
pub mod radicality;
