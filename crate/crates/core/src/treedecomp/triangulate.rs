use super::TreeDecomposition;
use crate::graph::Graph;
use crate::ordering::EliminationOrdering;

/// The chordal completion `G⁺_π` of a graph under an elimination ordering.
///
/// Stored as the higher-ordered neighborhood `N_i` of every vertex in
/// `G⁺_π`, listed by increasing elimination position.
#[derive(Debug, Clone)]
pub struct Triangulation<'g> {
    pub base: &'g Graph,
    pub ordering: EliminationOrdering,
    positions: Vec<u32>,
    higher: Vec<Vec<u32>>,
}

/// Eliminates vertices in the order `pi`, turning each vertex's
/// higher-ordered neighborhood in the current filled graph into a clique.
///
/// Computed by symbolic elimination along the elimination tree: `N(v)` is
/// the union of `v`'s original higher neighbors and the sets `N(c) \ {v}`
/// of the vertices `c` whose lowest higher neighbor is `v`. This yields the
/// same graph as the edge-by-edge process in O(|E(G⁺_π)|) time.
///
/// Panics if `pi` does not cover exactly the vertices of `g`.
pub fn triangulate<'g>(g: &'g Graph, pi: &EliminationOrdering) -> Triangulation<'g> {
    let n = g.n();
    assert_eq!(pi.len(), n, "ordering length differs from vertex count");
    let positions = pi.positions();
    let mut higher: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut mark = vec![u32::MAX; n];
    for (i, &v) in pi.as_slice().iter().enumerate() {
        let i = i as u32;
        let vi = v as usize;
        mark[vi] = i;
        let mut set = Vec::new();
        for &u in g.neighbors(v) {
            if positions[u as usize] > i && mark[u as usize] != i {
                mark[u as usize] = i;
                set.push(u);
            }
        }
        for &c in &children[vi] {
            for &u in &higher[c as usize] {
                if mark[u as usize] != i {
                    mark[u as usize] = i;
                    set.push(u);
                }
            }
        }
        set.sort_unstable_by_key(|&u| positions[u as usize]);
        if let Some(&parent) = set.first() {
            children[parent as usize].push(v);
        }
        children[vi] = Vec::new();
        higher[vi] = set;
    }
    Triangulation {
        base: g,
        ordering: pi.clone(),
        positions,
        higher,
    }
}

impl Triangulation<'_> {
    /// `N_i` of `v`: its neighbors in `G⁺_π` eliminated after it, by
    /// increasing position.
    pub fn higher_neighbors(&self, v: u32) -> &[u32] {
        &self.higher[v as usize]
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// Number of edges of `G⁺_π`.
    pub fn edge_count(&self) -> usize {
        self.higher.iter().map(Vec::len).sum()
    }

    pub fn fill_count(&self) -> usize {
        self.edge_count() - self.base.m()
    }

    /// Edges of `G⁺_π` missing from the base graph, as `(u, v)` with `u < v`,
    /// sorted.
    pub fn fill_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (v, hs) in self.higher.iter().enumerate() {
            let v = v as u32;
            for &u in hs {
                if !self.base.has_edge(v, u) {
                    out.push((v.min(u), v.max(u)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Size of the largest clique of `G⁺_π`; equals width + 1 of the
    /// resulting decomposition.
    pub fn max_clique(&self) -> usize {
        self.higher.iter().map(|h| h.len() + 1).max().unwrap_or(0)
    }

    /// Whether the ordering is a perfect elimination ordering of `G⁺_π`:
    /// for every `v` with lowest higher neighbor `p`, `N(v) \ {p} ⊆ N(p)`.
    pub fn is_perfect_elimination_ordering(&self) -> bool {
        let n = self.higher.len();
        let mut mark = vec![u32::MAX; n];
        for (v, hs) in self.higher.iter().enumerate() {
            let Some((&p, rest)) = hs.split_first() else {
                continue;
            };
            for &u in &self.higher[p as usize] {
                mark[u as usize] = v as u32;
            }
            if rest.iter().any(|&u| mark[u as usize] != v as u32) {
                return false;
            }
        }
        true
    }

    /// `G⁺_π` as a graph on the same vertex ids.
    pub fn to_graph(&self) -> Graph {
        let edges = self
            .higher
            .iter()
            .enumerate()
            .flat_map(|(v, hs)| hs.iter().map(move |&u| (v as u32, u)));
        Graph::from_edges(self.higher.len(), edges)
    }
}

/// Gavril's construction of a tree decomposition from `G⁺_π`.
///
/// Vertices are taken in reverse elimination order. The first forms bag 0.
/// For each later vertex `v` with higher neighborhood `B`, let `m` be the
/// lowest-ordered vertex of `B`: if `B` equals the bag of `m`, `v` joins
/// that bag; otherwise a new bag `B ∪ {v}` hangs off it. A vertex with
/// empty `B` (possible only on disconnected input) opens a new bag attached
/// to bag 0.
pub fn gavril_td(g: &Graph, pi: &EliminationOrdering) -> TreeDecomposition {
    let tri = triangulate(g, pi);
    gavril_from_triangulation(&tri)
}

pub(crate) fn gavril_from_triangulation(tri: &Triangulation<'_>) -> TreeDecomposition {
    let order = tri.ordering.as_slice();
    let n = order.len();
    let source = tri.ordering.heuristic_name();
    if n == 0 {
        return TreeDecomposition::new(Vec::new(), Vec::new(), 0, source);
    }
    let mut t = vec![u32::MAX; n];
    let last = order[n - 1];
    let mut bags: Vec<Vec<u32>> = vec![vec![last]];
    let mut edges = Vec::new();
    t[last as usize] = 0;
    for &v in order[..n - 1].iter().rev() {
        let b = tri.higher_neighbors(v);
        let Some(&m) = b.first() else {
            bags.push(vec![v]);
            edges.push((bags.len() as u32 - 1, 0));
            t[v as usize] = bags.len() as u32 - 1;
            continue;
        };
        let tm = t[m as usize];
        let bag = &mut bags[tm as usize];
        if bag.len() == b.len() {
            bag.push(v);
            t[v as usize] = tm;
        } else {
            let mut new_bag = b.to_vec();
            new_bag.push(v);
            bags.push(new_bag);
            let k = bags.len() as u32 - 1;
            edges.push((k, tm));
            t[v as usize] = k;
        }
    }
    TreeDecomposition::new(bags, edges, 0, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_binary_tree, gen_clique, gen_cycle};
    use crate::ordering::{order_mindeg, EliminationGraph};

    #[test]
    fn matches_explicit_elimination() {
        let g = crate::generators::gen_er(60, 0.1, 5);
        for seed in 0..5 {
            let ord = crate::ordering::order_amd(&g, seed);
            let tri = triangulate(&g, &ord);
            let mut eg = EliminationGraph::new(&g);
            let mut fill = 0;
            for &v in ord.as_slice() {
                fill += eg.fill_count(v);
                let mut nb = eg.eliminate(v);
                let mut hs = tri.higher_neighbors(v).to_vec();
                nb.sort_unstable();
                hs.sort_unstable();
                assert_eq!(nb, hs);
            }
            assert_eq!(tri.fill_count(), fill);
            assert_eq!(tri.fill_edges().len(), fill);
            assert!(tri.is_perfect_elimination_ordering());
        }
    }

    #[test]
    fn c4_has_one_fill_edge_for_every_order() {
        let g = gen_cycle(4);
        let perms = [
            [0, 1, 2, 3],
            [1, 0, 3, 2],
            [2, 3, 1, 0],
            [3, 1, 0, 2],
            [0, 2, 1, 3],
        ];
        for p in perms {
            let ord = EliminationOrdering::external(p.to_vec()).unwrap();
            assert_eq!(triangulate(&g, &ord).fill_count(), 1);
        }
    }

    #[test]
    fn pec_check_rejects_non_chordal() {
        // The base cycle itself with the identity order: feed G⁺ of C_5 back
        // as base and check with an order that needs fill.
        let g = gen_cycle(5);
        let ord = EliminationOrdering::external(vec![0, 2, 4, 1, 3]).unwrap();
        let tri = triangulate(&g, &ord);
        assert!(tri.is_perfect_elimination_ordering());
        let bogus = Triangulation {
            base: &g,
            ordering: ord.clone(),
            positions: ord.positions(),
            higher: (0..5u32)
                .map(|v| {
                    let mut h: Vec<u32> =
                        g.neighbors(v).iter().copied().filter(|&u| ord.positions()[u as usize] > ord.positions()[v as usize]).collect();
                    h.sort_by_key(|&u| ord.positions()[u as usize]);
                    h
                })
                .collect(),
        };
        assert!(!bogus.is_perfect_elimination_ordering());
    }

    #[test]
    fn gavril_on_tree_clique_cycle() {
        let t = gen_binary_tree(5);
        let td = gavril_td(&t, &order_mindeg(&t, 0));
        assert_eq!(td.n_bags(), t.n() - 1);
        assert!(td.bags.iter().all(|b| b.len() == 2 && t.has_edge(b[0], b[1])));

        let k = gen_clique(12);
        let td = gavril_td(&k, &order_mindeg(&k, 4));
        assert_eq!(td.bags, vec![(0..12).collect::<Vec<u32>>()]);
        assert!(td.edges.is_empty());

        let c = gen_cycle(10);
        for seed in 0..5 {
            assert_eq!(gavril_td(&c, &order_mindeg(&c, seed)).width(), 2);
        }
    }

    #[test]
    fn cycle_walked_in_order_gives_path_with_shared_vertex() {
        // 0, 1, ..., 9 is itself a minimum-degree order on C_10 (every
        // step sees degree 2); its decomposition is a path of bags that
        // all contain vertex 9.
        let c = gen_cycle(10);
        let ord = EliminationOrdering::external((0..10).collect()).unwrap();
        let mut eg = EliminationGraph::new(&c);
        for &v in ord.as_slice() {
            assert!((0..10).filter(|&u| !eg.is_eliminated(u)).all(|u| eg.degree(v) <= eg.degree(u)));
            eg.eliminate(v);
        }
        let td = gavril_td(&c, &ord);
        assert_eq!(td.width(), 2);
        assert!(td.tree_adjacency().iter().all(|a| a.len() <= 2), "not a path");
        assert!(td.bags.iter().all(|b| b.contains(&9)));
    }
}
