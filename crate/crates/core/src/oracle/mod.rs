//! Independent oracles for refined Severi degrees: floor diagrams and Wick
//! contractions.

pub mod floor;
pub mod svg;
pub mod wick;

pub use floor::{
    count_markings, enumerate_floor_diagrams, enumerate_markings, floor_relative, floor_severi,
    Edge, FloorDiagram, MarkedDiagram, VertexColour,
};
pub use svg::{render_floor_diagram, render_marked_diagram};
pub use wick::{wick_factor_vev, wick_severi, wick_vev, WickFactor, MAX_WICK_FACTORS};
