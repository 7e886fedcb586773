//! Tree decompositions of large sparse graphs and the structural analytics
//! built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable CSR graph, edge-list and PACE readers, BFS metrics,
//!   conductance and k-core peeling.
//! - [`generators`]: seeded random (Erdős–Rényi, Chung–Lu) and toy families.
//! - [`ordering`]: the six elimination-ordering heuristics.
//! - [`treedecomp`]: triangulation, Gavril's construction, validation,
//!   per-bag statistics, tree length and an exact treewidth oracle.
//! - [`analysis`]: bag profiles, PPR/NCP, cluster localization and the
//!   frequent-bag community classifier.
//! - [`hyperbolicity`]: exact four-point δ, geodesic cycles and the
//!   δ ≤ tl ≤ (tw+1)·ν check on subdivided grids.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hyperbolicity;
pub mod ordering;
pub mod rng;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{CoreDecomposition, Graph, VertexSet};
pub use ordering::{EliminationOrdering, Heuristic};
pub use treedecomp::TreeDecomposition;
