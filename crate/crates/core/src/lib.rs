//! Domination and minimum maximal matching on graphs of fixed diameter.
//!
//! The crate bundles exact and polynomial special-case solvers for Dominating
//! Set (claw-free, line and girth-5 graphs of diameter two), a minimum
//! maximal matching algorithm driven by maximal stable set enumeration, and
//! generators for three hardness reductions together with brute-force
//! oracles that cross-check all of it.

pub mod corpus;
pub mod domset;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod mmm;
pub mod oracle;
pub mod pattern;
pub mod recognition;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
