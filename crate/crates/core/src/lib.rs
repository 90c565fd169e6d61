//! Finite windows of infinite digraphs and the structural checks run on them:
//! descendant layers, the relations δ_n, ρ and R, reachability and alternets,
//! property-Z labelings, descendant-subdigraph properties and small-graph
//! symmetry search.

pub mod descent;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod partition;
pub mod reachability;
pub mod relations;
pub mod report;
pub mod structure;
pub mod symmetry;
pub mod window;

pub use error::{Error, Result};
pub use generators::GeneratorSpec;
pub use graph::{build_digraph, components_after_removal, induced_subdigraph, Digraph, Edge, VertexId};
pub use partition::{quotient, Partition, QuotientDigraph};
pub use window::Window;
