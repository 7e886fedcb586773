#![allow(dead_code)]

use proptest::prelude::*;
use treescope::Graph;

/// Connected graph on `n` vertices: a random spanning tree (each vertex
/// `v > 0` hangs off some earlier vertex) plus a random set of extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<u32>> = (1..n).map(|v| (0..v as u32).boxed()).collect();
        let pairs = n * (n - 1) / 2;
        (Just(n), parents, proptest::collection::vec(proptest::bool::weighted(0.3), pairs))
    })
    .prop_map(|(n, parents, extra)| {
        let mut edges: Vec<(u32, u32)> = parents.iter().enumerate().map(|(i, &p)| (p, i as u32 + 1)).collect();
        let mut k = 0;
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                if extra[k] {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges)
    })
}

/// Chordal graph built vertex by vertex: each new vertex joins a nonempty
/// subset of an existing clique, and that subset plus the vertex becomes a
/// new clique. The reverse insertion order is a perfect elimination order.
pub fn chordal_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| proptest::collection::vec((any::<u32>(), any::<u32>()), n - 1))
        .prop_map(|picks| {
            let n = picks.len() + 1;
            let mut cliques: Vec<Vec<u32>> = vec![vec![0]];
            let mut edges = Vec::new();
            for (i, &(c, mask)) in picks.iter().enumerate() {
                let v = i as u32 + 1;
                let base = &cliques[c as usize % cliques.len()];
                let mut sub: Vec<u32> = base
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> (j % 32) & 1 == 1)
                    .map(|(_, &u)| u)
                    .collect();
                if sub.is_empty() {
                    sub.push(base[mask as usize % base.len()]);
                }
                for &u in &sub {
                    edges.push((u, v));
                }
                sub.push(v);
                cliques.push(sub);
            }
            Graph::from_edges(n, edges)
        })
}

/// All-pairs distances by Floyd–Warshall on an adjacency matrix.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}
