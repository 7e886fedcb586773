//! Fixtures shared by the acceptance suite: small planted graphs, random
//! connected and chordal graph samplers, and a reference k-core peeler.

use rand::Rng;
use treescope::generators::gen_er;
use treescope::graph::giant_component;
use treescope::Graph;

/// Two `K_k` joined by the single edge `(k-1, k)`.
pub fn two_cliques(k: u32) -> Graph {
    let mut edges = Vec::new();
    for off in [0, k] {
        for a in 0..k {
            for b in a + 1..k {
                edges.push((off + a, off + b));
            }
        }
    }
    edges.push((k - 1, k));
    Graph::from_edges(2 * k as usize, edges)
}

/// A `K_core` with a path of `len` fresh vertices hanging off vertex 0.
/// Returns the graph and the path's vertices.
pub fn path_whisker(core: u32, len: u32) -> (Graph, Vec<u32>) {
    let mut edges = Vec::new();
    for a in 0..core {
        for b in a + 1..core {
            edges.push((a, b));
        }
    }
    edges.push((0, core));
    for v in core..core + len - 1 {
        edges.push((v, v + 1));
    }
    (Graph::from_edges((core + len) as usize, edges), (core..core + len).collect())
}

/// The giant component of ER(100, 0.05) with a `K_8` on fresh vertices
/// attached to vertex 0 by one edge. Returns an edge list and a
/// `node<TAB>label` table (`A` for the clique, `B` otherwise), as a user
/// would supply them.
pub fn planted_community_files(seed: u64) -> (String, String) {
    let core = giant_component(&gen_er(100, 0.05, seed));
    let c = core.n() as u32;
    let mut edges: Vec<(u32, u32)> = core.edges().collect();
    for a in c..c + 8 {
        for b in a + 1..c + 8 {
            edges.push((a, b));
        }
    }
    edges.push((0, c));
    let mut edge_list = String::from("# planted K8 whisker\n");
    for (u, v) in edges {
        edge_list.push_str(&format!("n{u} n{v}\n"));
    }
    let mut table = String::from("# node\tcommunity\n");
    for v in 0..c + 8 {
        table.push_str(&format!("n{v}\t{}\n", if v >= c { "A" } else { "B" }));
    }
    (edge_list, table)
}

/// Random spanning tree on `n` vertices plus each other pair with
/// probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Chordal graph grown by attaching each new vertex to a random nonempty
/// subset of an existing maximal-so-far clique.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut cliques: Vec<Vec<u32>> = vec![vec![0]];
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let mut sub: Vec<u32> = base.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if sub.is_empty() {
            sub.push(base[rng.gen_range(0..base.len())]);
        }
        for &u in &sub {
            edges.push((u, v));
        }
        sub.push(v);
        cliques.push(sub);
    }
    Graph::from_edges(n, edges)
}

/// Core numbers by definition: for each `k`, delete vertices of degree
/// below `k` until none remain; the survivors have core number `>= k`.
pub fn cores_by_deletion(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut core = vec![0u32; n];
    for k in 1..=g.max_degree() as u32 {
        let mut alive = vec![true; n];
        let mut deg: Vec<u32> = (0..n as u32).map(|v| g.degree(v) as u32).collect();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] < k).collect();
        for &v in &stack {
            alive[v as usize] = false;
        }
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                let u = u as usize;
                deg[u] -= 1;
                if alive[u] && deg[u] < k {
                    alive[u] = false;
                    stack.push(u as u32);
                }
            }
        }
        let mut any = false;
        for v in 0..n {
            if alive[v] {
                core[v] = k;
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    core
}
