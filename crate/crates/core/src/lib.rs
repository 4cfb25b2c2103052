//! Exact combinatorial topology over prime fields: chains and boundaries,
//! hypertrees and hypercuts, facet graphs and their connectivity,
//! elementary collapses and abstract cell complexes.

pub mod cell_complex;
pub mod chain;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod facet_graph;
pub mod field;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod simplex;
pub mod structures;
pub mod verify;

pub use chain::{boundary, coboundary, Chain};
pub use complex::Complex;
pub use error::{Error, Result};
pub use facet_graph::{FacetGraph, Graph};
pub use field::Field;
pub use simplex::Simplex;
pub use structures::Hypertree;
