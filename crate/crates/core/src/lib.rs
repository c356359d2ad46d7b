//! Beyond-planarity parameters of graph drawings.
//!
//! The crate computes the gap number, cover number, matching-planar number
//! and gap-cover number of a fixed drawing, each with an independently
//! checkable certificate, and replays the standard constructive arguments
//! about these drawings (shallow-minor drawings, subdivision contraction,
//! random sparsification, planarization with tree-decomposition lifting).
//! Brute-force oracles for shallow-minor density, generalized coloring
//! numbers and acyclic coloring make the density and expansion bounds
//! checkable on desk-scale instances.

pub mod coloring;
pub mod constructions;
pub mod densest;
pub mod drawing;
pub mod error;
pub mod expansion;
pub mod flow;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod io;
pub mod numbers;
pub mod treewidth;

pub use drawing::{AbstractDrawing, Crossing, GeometricDrawing};
pub use error::{Error, Result};
pub use graph::{degeneracy, density, EdgeId, Graph, Rational, Vertex, VertexOrdering};
pub use treewidth::TreeDecomposition;

/// Schema tag carried by every JSON document this crate reads or writes.
pub const SCHEMA: &str = "bpl/1";
