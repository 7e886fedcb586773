use std::collections::BTreeSet;

use super::{BucketQueue, EliminationGraph, EliminationOrdering, Heuristic};
use crate::graph::Graph;
use crate::rng::tie_ranks;

/// Minimum degree: repeatedly eliminate a vertex of smallest current degree
/// in the partially filled graph.
pub fn order_mindeg(g: &Graph, seed: u64) -> EliminationOrdering {
    let order = mindeg_order(g, tie_ranks(g.n(), seed));
    EliminationOrdering::from_heuristic(order, Heuristic::MinDegree, seed)
}

pub(crate) fn mindeg_order(g: &Graph, ranks: Vec<u32>) -> Vec<u32> {
    let n = g.n();
    let mut eg = EliminationGraph::new(g);
    let mut queue = BucketQueue::new(ranks, g.max_degree());
    for v in 0..n as u32 {
        queue.insert(v, eg.degree(v));
    }
    let mut order = Vec::with_capacity(n);
    while let Some((v, degree)) = queue.pop_min() {
        order.push(v);
        if degree as usize == eg.remaining() - 1 {
            // Minimum degree equals remaining-1: what is left is a clique
            // and every further step is fill-free with equal degrees.
            while let Some((w, _)) = queue.pop_min() {
                order.push(w);
            }
            break;
        }
        for u in eg.eliminate(v) {
            queue.update(u, eg.degree(u));
        }
    }
    order
}

/// Minimum fill: repeatedly eliminate a vertex whose elimination adds the
/// fewest fill edges.
///
/// Fill counts are recomputed for the vertices within distance two of each
/// eliminated vertex, so a step costs O(Σ deg²) over that neighborhood.
/// This is the scalability limit of the heuristic; use it on small graphs.
pub fn order_minfill(g: &Graph, seed: u64) -> EliminationOrdering {
    let n = g.n();
    let ranks = tie_ranks(n, seed);
    let mut eg = EliminationGraph::new(g);
    let mut fill: Vec<usize> = (0..n as u32).map(|v| eg.fill_count(v)).collect();
    let mut queue: BTreeSet<(usize, u32, u32)> = (0..n as u32)
        .map(|v| (fill[v as usize], ranks[v as usize], v))
        .collect();
    let mut stamp = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut step = 0u32;
    while let Some((f, _, v)) = queue.pop_first() {
        order.push(v);
        if f == 0 && eg.degree(v) as usize == eg.remaining() - 1 {
            // v's neighborhood is everything left and already a clique.
            order.extend(queue.iter().map(|&(_, _, w)| w));
            break;
        }
        let nbrs = eg.eliminate(v);
        let mut dirty = Vec::new();
        for &u in &nbrs {
            if stamp[u as usize] != step {
                stamp[u as usize] = step;
                dirty.push(u);
            }
            for w in eg.neighbors(u) {
                if stamp[w as usize] != step {
                    stamp[w as usize] = step;
                    dirty.push(w);
                }
            }
        }
        for u in dirty {
            let ui = u as usize;
            let new_fill = eg.fill_count(u);
            if new_fill != fill[ui] {
                queue.remove(&(fill[ui], ranks[ui], u));
                fill[ui] = new_fill;
                queue.insert((new_fill, ranks[ui], u));
            }
        }
        step += 1;
    }
    EliminationOrdering::from_heuristic(order, Heuristic::MinFill, seed)
}
