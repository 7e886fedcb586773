use std::collections::VecDeque;
use std::fmt;

use super::TreeDecomposition;
use crate::graph::Graph;

/// A broken requirement, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    /// A bag mentions a vertex id the graph does not have.
    UnknownVertex { bag: u32, vertex: u32 },
    /// The tree edges do not form a tree on the bag indices.
    NotATree { reason: String },
    /// Property 1: some vertex is in no bag.
    VertexUncovered { vertex: u32 },
    /// Property 2: no bag holds both ends of an edge.
    EdgeUncovered { u: u32, v: u32 },
    /// Property 3: the bags holding `vertex` are not connected in the tree;
    /// `bag_a` and `bag_b` both hold it but lie in different pieces.
    Disconnected { vertex: u32, bag_a: u32, bag_b: u32 },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::UnknownVertex { bag, vertex } => write!(f, "bag {bag} holds unknown vertex {vertex}"),
            TdViolation::NotATree { reason } => write!(f, "tree edges do not form a tree: {reason}"),
            TdViolation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            TdViolation::EdgeUncovered { u, v } => write!(f, "edge ({u},{v}) is in no bag"),
            TdViolation::Disconnected { vertex, bag_a, bag_b } => {
                write!(f, "bags of vertex {vertex} are disconnected: {bag_a} and {bag_b}")
            }
        }
    }
}

/// Outcome of [`validate_td`]: at most one violation of each kind, each
/// the first found, in checking order (tree, property 1, 2, 3).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<TdViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&TdViolation> {
        self.violations.first()
    }
}

/// Checks that `td` is a tree decomposition of `g`: the tree is a tree,
/// every vertex and every edge lies in some bag, and the bags holding any
/// one vertex form a connected subtree.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let n = g.n();
    let mut report = ValidationReport::default();
    let nb = td.n_bags();

    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v as usize >= n) {
            report.violations.push(TdViolation::UnknownVertex { bag: i as u32, vertex: v });
            return report;
        }
    }

    if let Some(reason) = tree_problem(td) {
        report.violations.push(TdViolation::NotATree { reason });
    }

    let bags_of = td.bags_of_vertices(n);
    if let Some(v) = (0..n).find(|&v| bags_of[v].is_empty()) {
        report.violations.push(TdViolation::VertexUncovered { vertex: v as u32 });
    }

    // Scan each bag's members' adjacency, marking the covered edge slots.
    let mut slot_start = vec![0usize; n + 1];
    for u in 0..n {
        slot_start[u + 1] = slot_start[u] + g.degree(u as u32);
    }
    let mut covered = vec![false; slot_start[n]];
    let mut in_bag = vec![u32::MAX; n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &w in bag {
            in_bag[w as usize] = i as u32;
        }
        for &u in bag {
            for (k, &v) in g.neighbors(u).iter().enumerate() {
                if in_bag[v as usize] == i as u32 {
                    covered[slot_start[u as usize] + k] = true;
                }
            }
        }
    }
    'edges: for u in 0..n as u32 {
        for (k, &v) in g.neighbors(u).iter().enumerate() {
            if v > u && !covered[slot_start[u as usize] + k] {
                report.violations.push(TdViolation::EdgeUncovered { u, v });
                break 'edges;
            }
        }
    }

    // In a forest, a vertex's bags are connected iff they span exactly
    // (count - 1) tree edges.
    if nb > 0 {
        let mut inner_edges = vec![0usize; n];
        for &(a, b) in &td.edges {
            if a as usize >= nb || b as usize >= nb {
                continue;
            }
            let (x, y) = (&td.bags[a as usize], &td.bags[b as usize]);
            let (mut i, mut j) = (0, 0);
            while i < x.len() && j < y.len() {
                match x[i].cmp(&y[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        inner_edges[x[i] as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        let adj = td.tree_adjacency();
        for v in 0..n {
            let holders = &bags_of[v];
            if holders.len() > 1 && inner_edges[v] + 1 != holders.len() {
                if let Some((a, b)) = split_witness(&adj, td, v as u32, holders) {
                    report.violations.push(TdViolation::Disconnected {
                        vertex: v as u32,
                        bag_a: a,
                        bag_b: b,
                    });
                    break;
                }
            }
        }
    }
    report
}

fn tree_problem(td: &TreeDecomposition) -> Option<String> {
    let nb = td.n_bags();
    if nb == 0 {
        return (!td.edges.is_empty()).then(|| "edges without bags".to_string());
    }
    if let Some(&(a, b)) = td.edges.iter().find(|&&(a, b)| a as usize >= nb || b as usize >= nb) {
        return Some(format!("edge ({a},{b}) refers to a missing bag"));
    }
    if td.edges.len() != nb - 1 {
        return Some(format!("{} edges for {} bags", td.edges.len(), nb));
    }
    if td.root as usize >= nb {
        return Some(format!("root {} is not a bag", td.root));
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; nb];
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    (count != nb).then(|| format!("only {count} of {nb} bags reachable from bag 0"))
}

/// Two bags holding `v` that the tree restricted to `v`'s bags does not
/// connect.
fn split_witness(adj: &[Vec<u32>], td: &TreeDecomposition, v: u32, holders: &[u32]) -> Option<(u32, u32)> {
    let holds = |b: u32| td.bags[b as usize].binary_search(&v).is_ok();
    let start = holders[0];
    let mut seen = vec![false; td.n_bags()];
    let mut queue = VecDeque::from([start]);
    seen[start as usize] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x as usize] {
            if !seen[y as usize] && holds(y) {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    holders.iter().find(|&&b| !seen[b as usize]).map(|&b| (start, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_er, gen_grid};
    use crate::ordering::{order, Heuristic};
    use crate::treedecomp::gavril_td;

    #[test]
    fn gavril_outputs_validate() {
        let g = gen_grid(6, 7);
        for h in Heuristic::ALL {
            let td = gavril_td(&g, &order(&g, h, 3));
            let r = validate_td(&g, &td);
            assert!(r.is_valid(), "{h}: {:?}", r.first());
        }
        let g = gen_er(80, 0.08, 1);
        let g = crate::graph::giant_component(&g);
        let td = gavril_td(&g, &order(&g, Heuristic::MinFill, 0));
        assert!(validate_td(&g, &td).is_valid());
    }

    #[test]
    fn p3_missing_edge() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)], 0, "hand");
        let r = validate_td(&g, &td);
        assert_eq!(r.first(), Some(&TdViolation::EdgeUncovered { u: 1, v: 2 }));
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn vertex_in_two_non_adjacent_bags() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        // Path of bags {0,1} - {2} - {1,2}: vertex 1 skips the middle bag.
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)], 0, "hand");
        let r = validate_td(&g, &td);
        assert_eq!(
            r.first(),
            Some(&TdViolation::Disconnected {
                vertex: 1,
                bag_a: 0,
                bag_b: 2
            })
        );
    }

    #[test]
    fn tree_shape_and_cover() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let cyc = TreeDecomposition::new(vec![vec![0, 1], vec![1], vec![1]], vec![(0, 1), (1, 2), (2, 0)], 0, "hand");
        let r = validate_td(&g, &cyc);
        assert!(matches!(r.first(), Some(TdViolation::NotATree { .. })));
        assert!(r.violations.contains(&TdViolation::VertexUncovered { vertex: 2 }));
        let bad_id = TreeDecomposition::new(vec![vec![0, 7]], vec![], 0, "hand");
        assert!(matches!(
            validate_td(&g, &bad_id).first(),
            Some(TdViolation::UnknownVertex { vertex: 7, .. })
        ));
    }
}
