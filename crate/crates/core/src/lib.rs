//! Verification and construction toolkit for hypohamiltonian, hypotraceable
//! and almost hypohamiltonian graphs, with emphasis on the planar case.

pub mod constructions;
pub mod formats;
pub mod graph;
pub mod grinberg;
pub mod hamiltonicity;
pub mod named;
pub mod planarity;
pub mod subgraph;
pub mod symmetry;

pub use graph::{DegreeCensus, Edge, Graph, GraphError, Vertex};
