use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use crate::graph::Graph;

/// Neighborhoods switch to a bitset once they hold more than `n / DENSE_RATIO`
/// vertices; past that point the bitset is no larger than the hash set.
const DENSE_RATIO: usize = 32;

/// Below this many vertices a neighborhood update inserts element by
/// element instead of OR-ing a bitset.
const BULK_MIN: usize = 64;

#[derive(Debug, Clone)]
enum Adjacency {
    Sparse(FxHashSet<u32>),
    Dense(FixedBitSet),
}

impl Adjacency {
    fn contains(&self, v: u32) -> bool {
        match self {
            Adjacency::Sparse(s) => s.contains(&v),
            Adjacency::Dense(b) => b.contains(v as usize),
        }
    }
}

/// A graph under vertex elimination with explicit fill: eliminating `v`
/// turns its remaining neighborhood into a clique and removes `v`.
///
/// Invariant: for every live vertex, `degree(v)` equals the number of live
/// neighbors including fill edges.
#[derive(Debug, Clone)]
pub struct EliminationGraph {
    adj: Vec<Adjacency>,
    degree: Vec<u32>,
    eliminated: Vec<bool>,
    remaining: usize,
    dense_threshold: usize,
}

impl EliminationGraph {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let dense_threshold = (n / DENSE_RATIO).max(BULK_MIN);
        let adj = (0..n as u32)
            .map(|v| Adjacency::Sparse(g.neighbors(v).iter().copied().collect()))
            .collect();
        let degree = (0..n as u32).map(|v| g.degree(v) as u32).collect();
        EliminationGraph {
            adj,
            degree,
            eliminated: vec![false; n],
            remaining: n,
            dense_threshold,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    pub fn is_eliminated(&self, v: u32) -> bool {
        self.eliminated[v as usize]
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(v)
    }

    /// Live neighbors of `v`, ascending.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = match &self.adj[v as usize] {
            Adjacency::Sparse(s) => s.iter().copied().collect(),
            Adjacency::Dense(b) => b.ones().map(|x| x as u32).collect(),
        };
        out.sort_unstable();
        out
    }

    /// Number of fill edges eliminating `v` would add.
    pub fn fill_count(&self, v: u32) -> usize {
        let nbrs = self.neighbors(v);
        let mut missing = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            let row = &self.adj[a as usize];
            missing += nbrs[i + 1..].iter().filter(|&&b| !row.contains(b)).count();
        }
        missing
    }

    /// Eliminates `v` and returns its live neighborhood at that moment
    /// (ascending), which becomes a clique.
    pub fn eliminate(&mut self, v: u32) -> Vec<u32> {
        assert!(!self.eliminated[v as usize], "vertex {v} eliminated twice");
        let nbrs = self.neighbors(v);
        let n = self.n();
        let bulk = if nbrs.len() >= BULK_MIN {
            let mut b = FixedBitSet::with_capacity(n);
            b.extend(nbrs.iter().map(|&x| x as usize));
            Some(b)
        } else {
            None
        };
        for &u in &nbrs {
            let ui = u as usize;
            let mut degree = self.degree[ui] as usize;
            match &mut self.adj[ui] {
                Adjacency::Sparse(set) => {
                    if set.remove(&v) {
                        degree -= 1;
                    }
                    for &w in &nbrs {
                        if w != u && set.insert(w) {
                            degree += 1;
                        }
                    }
                    if set.len() > self.dense_threshold {
                        let mut b = FixedBitSet::with_capacity(n);
                        b.extend(set.iter().map(|&x| x as usize));
                        self.adj[ui] = Adjacency::Dense(b);
                    }
                }
                Adjacency::Dense(bits) => {
                    bits.set(v as usize, false);
                    match &bulk {
                        Some(b) => {
                            bits.union_with(b);
                            bits.set(ui, false);
                            degree = bits.count_ones(..);
                        }
                        None => {
                            for &w in &nbrs {
                                if w != u && !bits.put(w as usize) {
                                    degree += 1;
                                }
                            }
                            // `v` was a neighbor and is gone.
                            degree -= 1;
                        }
                    }
                }
            }
            self.degree[ui] = degree as u32;
        }
        self.adj[v as usize] = Adjacency::Sparse(FxHashSet::default());
        self.degree[v as usize] = 0;
        self.eliminated[v as usize] = true;
        self.remaining -= 1;
        nbrs
    }
}
