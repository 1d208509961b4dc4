//! Combinatorial engine for critically fixed branched covers of the sphere.
//!
//! The substrate is the rotation system (combinatorial map): a loopless
//! multigraph with a counterclockwise cyclic order of edge-ends at every
//! vertex. On top of that the crate builds the radial (Tischler) model of a
//! charge graph, the blow-up branched-cover model obtained by replacing each
//! edge with a bigon patch, curve words over spanning-tree generators, the
//! pullback of curves through the cover (both by walking the overlay complex
//! and through the extracted wreath recursion), the finite global curve
//! attractor, and a census of charge graphs by edge count.

pub mod attractor;
pub mod blowup;
pub mod classify;
pub mod cli_io;
pub mod curves;
mod error;
pub mod pullback;
pub mod rotation_map;
pub mod tischler;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod fixtures;
