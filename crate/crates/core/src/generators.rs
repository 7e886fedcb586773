//! Seeded random graphs and the toy families.
//!
//! Random generators draw from [`crate::rng::stream_rng`] on the
//! [`Stream::Generate`] stream, so `(family, params, seed)` pins the edge
//! set exactly on every platform.

use rand::Rng;

use crate::graph::Graph;
use crate::rng::{stream_rng, Stream};
use crate::{Error, Result};

/// A generator family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Er { n: usize, p: f64 },
    ChungLu { n: usize, gamma: f64, avg_degree: f64 },
    BinaryTree { depth: u32 },
    Grid { rows: usize, cols: usize },
    Cycle { n: usize },
    Clique { n: usize },
    GridSubdivision { n: usize, k: usize },
}

/// Target average degree used by [`GenSpec::ChungLu`] when none is given.
pub const DEFAULT_CHUNG_LU_AVG_DEGREE: f64 = 2.75;

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::param(format!("{name} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match *self {
            GenSpec::Er { n, p } => {
                positive("n", n)?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::param(format!("p must lie in (0, 1], got {p}")));
                }
            }
            GenSpec::ChungLu { n, gamma, avg_degree } => {
                positive("n", n)?;
                if !(gamma > 2.0 && gamma <= 4.0) {
                    return Err(Error::param(format!("gamma must lie in (2, 4], got {gamma}")));
                }
                if !(avg_degree > 0.0 && avg_degree.is_finite()) {
                    return Err(Error::param("average degree must be positive"));
                }
            }
            GenSpec::BinaryTree { depth } => {
                if depth > 30 {
                    return Err(Error::param("binary tree depth above 30"));
                }
            }
            GenSpec::Grid { rows, cols } => {
                positive("rows", rows)?;
                positive("cols", cols)?;
            }
            GenSpec::Cycle { n } | GenSpec::Clique { n } => positive("n", n)?,
            GenSpec::GridSubdivision { n, .. } => {
                if n < 2 {
                    return Err(Error::param("grid subdivision needs n >= 2"));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        self.validate()?;
        Ok(match *self {
            GenSpec::Er { n, p } => gen_er(n, p, seed),
            GenSpec::ChungLu { n, gamma, avg_degree } => gen_chung_lu(n, gamma, avg_degree, seed),
            GenSpec::BinaryTree { depth } => gen_binary_tree(depth),
            GenSpec::Grid { rows, cols } => gen_grid(rows, cols),
            GenSpec::Cycle { n } => gen_cycle(n),
            GenSpec::Clique { n } => gen_clique(n),
            GenSpec::GridSubdivision { n, k } => gen_grid_subdivision(n, k),
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Er { .. } => "er",
            GenSpec::ChungLu { .. } => "chung_lu",
            GenSpec::BinaryTree { .. } => "binary_tree",
            GenSpec::Grid { .. } => "grid",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::Clique { .. } => "clique",
            GenSpec::GridSubdivision { .. } => "grid_subdivision",
        }
    }
}

/// G(n, p): every unordered pair independently with probability `p`.
///
/// Pairs are visited in the order (1,0), (2,0), (2,1), (3,0), ... and the
/// gaps between accepted pairs are drawn geometrically (Batagelj–Brandes),
/// so the cost is O(n + m).
pub fn gen_er(n: usize, p: f64, seed: u64) -> Graph {
    assert!(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
    if p >= 1.0 {
        return gen_clique(n);
    }
    let mut rng = stream_rng(seed, Stream::Generate);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor() as i64;
        w += 1 + skip;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v as u32, w as u32));
        }
    }
    Graph::from_edges(n, edges)
}

/// Expected-degree weights `w_i ∝ (i+1)^(-1/(γ-1))`, scaled so their mean
/// is `avg_degree`.
pub fn chung_lu_weights(n: usize, gamma: f64, avg_degree: f64) -> Vec<f64> {
    let exponent = -1.0 / (gamma - 1.0);
    let raw: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(exponent)).collect();
    let total: f64 = raw.iter().sum();
    let scale = avg_degree * n as f64 / total;
    raw.into_iter().map(|w| w * scale).collect()
}

/// Chung–Lu graph: pair (i, j) joined independently with probability
/// `min(1, w_i w_j / Σw)`.
///
/// Weights are non-increasing in the index, so for fixed `u` the
/// probability only falls as `v` grows; gaps are drawn geometrically at the
/// current upper bound and thinned (Miller–Hagberg), giving O(n + m)
/// expected time.
pub fn gen_chung_lu(n: usize, gamma: f64, avg_degree: f64, seed: u64) -> Graph {
    let w = chung_lu_weights(n, gamma, avg_degree);
    let total: f64 = w.iter().sum();
    let mut rng = stream_rng(seed, Stream::Generate);
    let mut edges = Vec::new();
    for u in 0..n.saturating_sub(1) {
        let mut v = u + 1;
        let mut p = (w[u] * w[v] / total).min(1.0);
        while v < n && p > 0.0 {
            if p < 1.0 {
                let r: f64 = rng.gen();
                let skip = ((1.0 - r).ln() / (1.0 - p).ln()).floor();
                if skip >= (n - v) as f64 {
                    break;
                }
                v += skip as usize;
            }
            if v < n {
                let q = (w[u] * w[v] / total).min(1.0);
                let r: f64 = rng.gen();
                if r < q / p {
                    edges.push((u as u32, v as u32));
                }
                p = q;
                v += 1;
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Row-major `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = (r * cols + c) as u32;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols as u32));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// `C_n` for n ≥ 3; a single edge for n = 2 and an isolated vertex for n = 1.
pub fn gen_cycle(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect(),
    };
    Graph::from_edges(n, edges)
}

pub fn gen_clique(n: usize) -> Graph {
    let n32 = n as u32;
    let edges = (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b)));
    Graph::from_edges(n, edges)
}

/// Perfect binary tree with `2^(depth+1) - 1` vertices in heap order
/// (children of `i` are `2i+1` and `2i+2`).
pub fn gen_binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    let edges = (1..n as u32).map(|v| ((v - 1) / 2, v));
    Graph::from_edges(n, edges)
}

/// Vertex layout of the k-subdivided n × n grid.
///
/// Grid corners `(r, c)` come first as `r * n + c`. Then, for each grid
/// edge, its `k` interior vertices in order from the first endpoint to the
/// second: all horizontal edges `(r,c)-(r,c+1)` row by row, followed by all
/// vertical edges `(r,c)-(r+1,c)` row by row.
#[derive(Debug, Clone, Copy)]
pub struct SubdividedGrid {
    pub n: usize,
    pub k: usize,
}

impl SubdividedGrid {
    pub fn vertex_count(&self) -> usize {
        self.n * self.n + 2 * self.n * (self.n - 1) * self.k
    }

    pub fn corner(&self, r: usize, c: usize) -> u32 {
        (r * self.n + c) as u32
    }

    fn interior(&self, edge_index: usize) -> std::ops::Range<u32> {
        let base = (self.n * self.n + edge_index * self.k) as u32;
        base..base + self.k as u32
    }

    fn horizontal(&self, r: usize, c: usize) -> std::ops::Range<u32> {
        self.interior(r * (self.n - 1) + c)
    }

    fn vertical(&self, r: usize, c: usize) -> std::ops::Range<u32> {
        self.interior(self.n * (self.n - 1) + r * self.n + c)
    }

    /// Vertex path of every grid edge, endpoints included.
    pub fn edge_paths(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut paths = Vec::with_capacity(2 * n * (n - 1));
        for r in 0..n {
            for c in 0..n - 1 {
                let mut p = vec![self.corner(r, c)];
                p.extend(self.horizontal(r, c));
                p.push(self.corner(r, c + 1));
                paths.push(p);
            }
        }
        for r in 0..n - 1 {
            for c in 0..n {
                let mut p = vec![self.corner(r, c)];
                p.extend(self.vertical(r, c));
                p.push(self.corner(r + 1, c));
                paths.push(p);
            }
        }
        paths
    }

    /// Boundary of the unit cell whose top-left corner is `(r, c)`, as a
    /// closed vertex sequence of length `4(k+1)`.
    pub fn cell_cycle(&self, r: usize, c: usize) -> Vec<u32> {
        assert!(r + 1 < self.n && c + 1 < self.n, "cell out of range");
        let mut cycle = vec![self.corner(r, c)];
        cycle.extend(self.horizontal(r, c));
        cycle.push(self.corner(r, c + 1));
        cycle.extend(self.vertical(r, c + 1));
        cycle.push(self.corner(r + 1, c + 1));
        cycle.extend(self.horizontal(r + 1, c).rev());
        cycle.push(self.corner(r + 1, c));
        cycle.extend(self.vertical(r, c).rev());
        cycle
    }

    pub fn build(&self) -> Graph {
        let edges = self
            .edge_paths()
            .into_iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>());
        Graph::from_edges(self.vertex_count(), edges)
    }
}

/// The n × n grid with every edge replaced by a path through `k` new
/// vertices. See [`SubdividedGrid`] for the vertex numbering.
pub fn gen_grid_subdivision(n: usize, k: usize) -> Graph {
    SubdividedGrid { n, k }.build()
}
