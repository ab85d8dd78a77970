//! Exact combinatorics of enhanced level graphs, the boundary strata of
//! moduli spaces of multi-scale differentials.
//!
//! The crate is organized bottom-up: [`level_graph`] holds the data model,
//! [`degenerations`] contracts graphs, [`twist_lattice`] does the integer
//! lattice algebra, [`residue_grc`] the residue linear algebra,
//! [`toric_closure`] and [`blowup_ideals`] the monoid and ideal
//! computations, and [`enumerate`] lists graphs of a given type.

pub mod blowup_ideals;
pub mod cli;
pub mod degenerations;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod level_graph;
pub mod residue_grc;
pub mod toric_closure;
pub mod twist_lattice;

pub use error::{Error, Result};
pub use level_graph::{
    codim, level_subgraph, node_orders, validate, Edge, EnhancedLevelGraph, LevelMode, SignatureMu,
    ValidationReport, Vertex,
};
