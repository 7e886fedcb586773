//! Immutable undirected simple graphs.
//!
//! Vertices are internal indices `0..n` stored as `u32`; the original
//! external labels are kept in a bidirectional map so every report can be
//! phrased in the input's own vocabulary.

mod io;
mod kcore;
mod metrics;

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::{Error, Result};

pub use io::{load_edge_list, load_pace_gr, write_edge_list, write_pace_gr, LoadReport};
pub use kcore::{k_core, CoreDecomposition};
pub use metrics::{
    avg_clustering, clustering_coefficient, conductance, diameter, diameter_sampled,
    eccentricity,
};

/// Distance reported by [`bfs_distances`] for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<String>,
    index: FxHashMap<String, u32>,
}

/// Counts of input records discarded while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl BuildReport {
    pub fn dropped(&self) -> usize {
        self.duplicate_edges + self.self_loops
    }
}

impl Graph {
    /// Builds a simple graph on `n` vertices labelled `"0".."n-1"`.
    /// Self-loops and repeated edges (in either orientation) are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Graph {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_labeled_edges(labels, edges).0
    }

    /// Like [`Graph::from_edges`] with caller-supplied labels; also returns
    /// how many records were dropped.
    pub fn from_labeled_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> (Graph, BuildReport) {
        let n = labels.len();
        let mut report = BuildReport::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            if u == v {
                report.self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        report.duplicate_edges = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * pairs.len()];
        // Sorted pair order makes every adjacency list come out sorted.
        for &(u, v) in &pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
        }
        for &(u, v) in &pairs {
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        (
            Graph {
                offsets,
                targets,
                labels,
                index,
            },
            report,
        )
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v as usize))
        }
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order
    /// and carrying the original labels.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Graph {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = local[w as usize];
                if j != u32::MAX && (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v as usize].clone()).collect();
        Self::from_labeled_edges(labels, edges).0
    }

    /// Connected components, each sorted ascending, listed in order of
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s as u32);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// Induced subgraph on the largest connected component. Ties go to the
/// component containing the smallest vertex index. Vertex order (and so
/// relative label order) is preserved.
pub fn giant_component(g: &Graph) -> Graph {
    let comps = g.connected_components();
    if comps.len() <= 1 {
        return g.clone();
    }
    // `max_by_key` keeps the last maximum; iterate in reverse so the
    // earliest component wins ties.
    let best = comps
        .iter()
        .rev()
        .max_by_key(|c| c.len())
        .expect("non-empty graph has a component");
    g.induced_subgraph(best)
}

/// Unweighted single-source distances; [`UNREACHABLE`] marks other
/// components.
pub fn bfs_distances(g: &Graph, s: u32) -> Result<Vec<u32>> {
    g.check_vertex(s)?;
    let mut dist = vec![UNREACHABLE; g.n()];
    bfs_into(g, s, &mut dist, &mut VecDeque::new());
    Ok(dist)
}

/// BFS reusing caller buffers; `dist` must be all [`UNREACHABLE`].
pub(crate) fn bfs_into(g: &Graph, s: u32, dist: &mut [u32], queue: &mut VecDeque<u32>) {
    queue.clear();
    dist[s as usize] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &w in g.neighbors(u) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
    }
}

/// A set of internal vertex indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.members
    }

    /// Dense membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v as usize] = true;
        }
        mask
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&v) if v as usize >= n => Err(Error::InvalidVertex(v as usize)),
            _ => Ok(()),
        }
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}
