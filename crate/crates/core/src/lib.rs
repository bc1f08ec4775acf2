//! Refined Severi degrees of h-transverse lattice polygons, computed as
//! matrix elements of a deformed two-colour Heisenberg algebra and checked
//! against floor-diagram and Wick-contraction oracles.

pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod polygon;
pub mod ring;
pub mod severi;

pub use combinatorics::{DivergenceProfile, IntMultiset, Partition};
pub use error::{Error, Result};
pub use fock::{BasisVector, Colour, FockState, Generator};
pub use oracle::{FloorDiagram, MarkedDiagram};
pub use polygon::{HTransversePolygon, Preset};
pub use ring::{EvalPoint, GaussianInt, LaurentY, RationalLaurentY};
pub use severi::{
    refined_relative, refined_severi, severi_degree, welschinger, Family, GenfunOrders,
    GenfunReport, IrreducibleEntry, SeveriQuery,
};
