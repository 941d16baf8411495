//! Conflict-free P-perfect matchings in tripartite hypergraphs.
//!
//! A random greedy pass over `H1` builds a conflict-free matching that covers
//! most of `P`; a second pass picks one safe `H2` edge per uncovered vertex
//! and removes the remaining conflicts by resampling.

pub mod apps;
pub mod cli;
pub mod comb;
pub mod conditions;
pub mod conflicts;
pub mod error;
pub mod family;
pub mod hypergraph;
pub mod instance;
pub mod io;
pub mod model;
pub mod pipeline;
pub mod random;
pub mod rng;
pub mod series;
pub mod stage1;
pub mod stage2;
pub mod trackers;
pub mod unavoid;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Matching, Part, Shape, VertexId};
