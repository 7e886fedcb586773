use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::greedy::mindeg_order;
use super::{EliminationOrdering, Heuristic};
use crate::graph::{Graph, UNREACHABLE};
use crate::rng::{stream_rng, tie_ranks, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissectionParams {
    /// Pieces with at most this many vertices are ordered by minimum degree.
    pub leaf_threshold: usize,
    /// Each side of a bisection holds between `0.5 - balance` and
    /// `0.5 + balance` of the piece.
    pub balance: f64,
}

impl Default for DissectionParams {
    fn default() -> Self {
        DissectionParams {
            leaf_threshold: 64,
            balance: 0.2,
        }
    }
}

/// Nested dissection: find a small vertex separator, order both sides
/// recursively and put the separator last.
///
/// Separators come from a BFS bisection grown from a pseudo-peripheral
/// vertex, improved by one pass of boundary swaps and turned into a vertex
/// separator by taking the smaller endpoint side of the cut edges.
pub fn order_nested_dissection(g: &Graph, seed: u64, params: DissectionParams) -> EliminationOrdering {
    let mut state = Dissection {
        g,
        ranks: tie_ranks(g.n(), seed),
        rng: stream_rng(seed, Stream::Separator),
        params,
        order: Vec::with_capacity(g.n()),
    };
    for comp in g.connected_components() {
        state.dissect(comp);
    }
    EliminationOrdering::from_heuristic(state.order, Heuristic::NestedDissection, seed)
}

struct Dissection<'a> {
    g: &'a Graph,
    ranks: Vec<u32>,
    rng: ChaCha8Rng,
    params: DissectionParams,
    order: Vec<u32>,
}

impl Dissection<'_> {
    /// Appends an ordering of the connected vertex set `piece`.
    fn dissect(&mut self, piece: Vec<u32>) {
        if piece.len() <= self.params.leaf_threshold.max(2) {
            self.leaf(&piece);
            return;
        }
        let h = self.g.induced_subgraph(&piece);
        let side = self.bisect(&h);
        let sep = vertex_separator(&h, &side);
        if sep.is_empty() || sep.len() == piece.len() {
            self.leaf(&piece);
            return;
        }
        let mut in_sep = vec![false; h.n()];
        for &v in &sep {
            in_sep[v as usize] = true;
        }
        let rest: Vec<u32> = (0..h.n() as u32).filter(|&v| !in_sep[v as usize]).collect();
        let sub = h.induced_subgraph(&rest);
        for comp in sub.connected_components() {
            let part = comp.iter().map(|&v| piece[rest[v as usize] as usize]).collect();
            self.dissect(part);
        }
        self.order.extend(sep.iter().map(|&v| piece[v as usize]));
    }

    fn leaf(&mut self, piece: &[u32]) {
        let h = self.g.induced_subgraph(piece);
        let ranks = piece.iter().map(|&v| self.ranks[v as usize]).collect();
        let local = mindeg_order(&h, ranks);
        self.order.extend(local.into_iter().map(|v| piece[v as usize]));
    }

    /// Two-way split of the connected graph `h`: `true` marks side A.
    fn bisect(&mut self, h: &Graph) -> Vec<bool> {
        let n = h.n();
        let start = self.rng.gen_range(0..n as u32);
        let root = pseudo_peripheral(h, start);
        // BFS order from the root; the first half forms side A.
        let (bfs_order, _) = bfs_order(h, root);
        let target = n / 2;
        let mut side = vec![false; n];
        for &v in &bfs_order[..target] {
            side[v as usize] = true;
        }
        let lo = ((0.5 - self.params.balance) * n as f64).ceil() as usize;
        let hi = ((0.5 + self.params.balance) * n as f64).floor() as usize;
        refine(h, &mut side, target, lo.max(1), hi.min(n - 1));
        side
    }
}

fn bfs_order(h: &Graph, root: u32) -> (Vec<u32>, Vec<u32>) {
    let mut dist = vec![UNREACHABLE; h.n()];
    let mut order = Vec::with_capacity(h.n());
    let mut queue = VecDeque::from([root]);
    dist[root as usize] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in h.neighbors(v) {
            if dist[u as usize] == UNREACHABLE {
                dist[u as usize] = dist[v as usize] + 1;
                queue.push_back(u);
            }
        }
    }
    (order, dist)
}

/// Repeatedly jumps to the farthest vertex (lowest id on ties) until the
/// eccentricity stops growing.
fn pseudo_peripheral(h: &Graph, start: u32) -> u32 {
    let mut v = start;
    let mut ecc = 0;
    loop {
        let (order, dist) = bfs_order(h, v);
        let far_d = dist[*order.last().expect("non-empty") as usize];
        if far_d <= ecc {
            return v;
        }
        ecc = far_d;
        v = order
            .iter()
            .copied()
            .filter(|&u| dist[u as usize] == far_d)
            .min()
            .expect("non-empty");
    }
}

/// One pass of boundary swaps: a vertex moves to the other side when that
/// lowers the cut and both sides stay within `[lo, hi]`.
fn refine(h: &Graph, side: &mut [bool], mut size_a: usize, lo: usize, hi: usize) {
    let n = h.n();
    for v in 0..n as u32 {
        let vi = v as usize;
        let same = h.neighbors(v).iter().filter(|&&u| side[u as usize] == side[vi]).count();
        let other = h.degree(v) - same;
        if other <= same {
            continue;
        }
        let new_a = if side[vi] { size_a - 1 } else { size_a + 1 };
        if new_a < lo || new_a > hi {
            continue;
        }
        side[vi] = !side[vi];
        size_a = new_a;
    }
}

/// The endpoints of cut edges on whichever side has fewer of them.
fn vertex_separator(h: &Graph, side: &[bool]) -> Vec<u32> {
    let mut on_a = Vec::new();
    let mut on_b = Vec::new();
    for v in 0..h.n() as u32 {
        if h.neighbors(v).iter().any(|&u| side[u as usize] != side[v as usize]) {
            if side[v as usize] {
                on_a.push(v);
            } else {
                on_b.push(v);
            }
        }
    }
    if on_a.len() <= on_b.len() {
        on_a
    } else {
        on_b
    }
}
