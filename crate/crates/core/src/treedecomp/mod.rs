//! Tree decompositions: triangulation by an elimination ordering, Gavril's
//! clique-tree construction, validation, bag statistics, tree length and an
//! exact treewidth oracle for small graphs.
//!
//! Width is always `max |X_i| - 1`; cardinality is `max |X_i|`. Reports
//! carry both.

mod exact;
mod pace;
mod stats;
mod triangulate;
mod validate;

pub use exact::{brute_force_treewidth, treewidth_subset_dp, EXACT_TREEWIDTH_MAX_N};
pub use pace::{export_td, import_td};
pub use stats::{td_length, td_stats, tree_eccentricities, BagStats, TDStats};
pub use triangulate::{gavril_td, triangulate, Triangulation};
pub use validate::{validate_td, TdViolation, ValidationReport};

/// Bags `X_i` (sorted vertex lists) joined by the tree `edges` over bag
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<u32>>,
    pub edges: Vec<(u32, u32)>,
    pub root: u32,
    /// Name of the heuristic the decomposition came from, or where it was
    /// loaded from.
    pub source: String,
}

impl TreeDecomposition {
    /// Sorts and dedups each bag; nothing else is checked (see
    /// [`validate_td`]).
    pub fn new(mut bags: Vec<Vec<u32>>, edges: Vec<(u32, u32)>, root: u32, source: impl Into<String>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition {
            bags,
            edges,
            root,
            source: source.into(),
        }
    }

    pub fn n_bags(&self) -> usize {
        self.bags.len()
    }

    pub fn max_cardinality(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `max |X_i| - 1`; 0 for an empty decomposition.
    pub fn width(&self) -> usize {
        self.max_cardinality().saturating_sub(1)
    }

    /// Largest vertex id mentioned plus one.
    pub fn vertex_bound(&self) -> usize {
        self.bags
            .iter()
            .flat_map(|b| b.last())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Tree adjacency over bag indices.
    pub fn tree_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if (a as usize) < adj.len() && (b as usize) < adj.len() {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
        adj
    }

    /// For each vertex below `n`, the indices of the bags holding it.
    pub fn bags_of_vertices(&self, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if let Some(slot) = out.get_mut(v as usize) {
                    slot.push(i as u32);
                }
            }
        }
        out
    }

    /// Graphviz rendering of the tree, one node per bag labelled with its
    /// members' labels.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("graph td {\n  node [shape=box];\n");
        for (i, bag) in self.bags.iter().enumerate() {
            let names: Vec<&str> = bag
                .iter()
                .map(|&v| labels.get(v as usize).map_or("?", String::as_str))
                .collect();
            s.push_str(&format!("  b{i} [label=\"{}\"];\n", names.join(" ").replace('"', "\\\"")));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  b{a} -- b{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}
