use std::collections::VecDeque;

use rand::seq::index::sample;
use rayon::prelude::*;

use super::{bfs_into, Graph, VertexSet, UNREACHABLE};
use crate::rng::{stream_rng, Stream};
use crate::{Error, Result};

fn eccentricity_unchecked(g: &Graph, v: u32, dist: &mut [u32], queue: &mut VecDeque<u32>) -> u32 {
    dist.fill(UNREACHABLE);
    bfs_into(g, v, dist, queue);
    dist.iter().copied().max().unwrap_or(0)
}

fn max_eccentricity(g: &Graph, sources: &[u32]) -> u32 {
    sources
        .par_iter()
        .map_init(
            || (vec![UNREACHABLE; g.n()], VecDeque::new()),
            |(dist, queue), &s| eccentricity_unchecked(g, s, dist, queue),
        )
        .max()
        .unwrap_or(0)
}

pub fn eccentricity(g: &Graph, v: u32) -> Result<u32> {
    g.check_vertex(v)?;
    g.require_connected()?;
    let mut dist = vec![UNREACHABLE; g.n()];
    Ok(eccentricity_unchecked(g, v, &mut dist, &mut VecDeque::new()))
}

/// Exact diameter by BFS from every vertex.
pub fn diameter(g: &Graph) -> Result<u32> {
    g.require_connected()?;
    let all: Vec<u32> = (0..g.n() as u32).collect();
    Ok(max_eccentricity(g, &all))
}

/// Lower bound on the diameter from `sources` uniformly sampled BFS roots
/// (exact when `sources >= n`).
pub fn diameter_sampled(g: &Graph, sources: usize, seed: u64) -> Result<u32> {
    g.require_connected()?;
    if sources >= g.n() {
        return diameter(g);
    }
    let mut rng = stream_rng(seed, Stream::Diameter);
    let roots: Vec<u32> = sample(&mut rng, g.n(), sources)
        .into_iter()
        .map(|v| v as u32)
        .collect();
    Ok(max_eccentricity(g, &roots))
}

/// Fraction of neighbor pairs of `v` that are adjacent; 0 when `deg(v) < 2`.
pub fn clustering_coefficient(g: &Graph, v: u32) -> f64 {
    let nbrs = g.neighbors(v);
    let d = nbrs.len();
    if d < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        // Count neighbors of `a` inside nbrs[i+1..] by merging sorted lists.
        let rest = &nbrs[i + 1..];
        let na = g.neighbors(a);
        let (mut x, mut y) = (0, 0);
        while x < rest.len() && y < na.len() {
            match rest[x].cmp(&na[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    links += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
    }
    2.0 * links as f64 / (d * (d - 1)) as f64
}

pub fn avg_clustering(g: &Graph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    let total: f64 = (0..g.n() as u32)
        .into_par_iter()
        .map(|v| clustering_coefficient(g, v))
        .sum();
    total / g.n() as f64
}

/// φ(S) = cut(S, S̄) / min(vol(S), vol(S̄)), with vol the degree sum.
pub fn conductance(g: &Graph, s: &VertexSet) -> Result<f64> {
    s.check_within(g.n())?;
    if s.is_empty() || s.len() == g.n() {
        return Err(Error::param("conductance needs a proper non-empty vertex subset"));
    }
    let mask = s.mask(g.n());
    let mut cut = 0usize;
    let mut vol = 0usize;
    for v in s.iter() {
        vol += g.degree(v);
        cut += g.neighbors(v).iter().filter(|&&w| !mask[w as usize]).count();
    }
    let denom = vol.min(2 * g.m() - vol);
    if denom == 0 {
        return Err(Error::param("conductance undefined: one side has zero volume"));
    }
    Ok(cut as f64 / denom as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_cycle, gen_grid};

    /// K_5 on 0..5 hanging by the edge (4,5) off K_10 on 5..15.
    fn clique_whisker() -> Graph {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        for a in 5..15 {
            for b in a + 1..15 {
                edges.push((a, b));
            }
        }
        edges.push((4, 5));
        Graph::from_edges(15, edges)
    }

    #[test]
    fn clique_metrics() {
        let k5 = gen_clique(5);
        assert_eq!(diameter(&k5).unwrap(), 1);
        assert!((avg_clustering(&k5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_and_cycle_metrics() {
        let grid = gen_grid(50, 50);
        assert_eq!(diameter(&grid).unwrap(), 98);
        assert_eq!(avg_clustering(&grid), 0.0);
        let c10 = gen_cycle(10);
        assert_eq!(diameter(&c10).unwrap(), 5);
        assert_eq!(eccentricity(&c10, 3).unwrap(), 5);
        assert_eq!(avg_clustering(&c10), 0.0);
    }

    #[test]
    fn sampled_diameter_is_a_lower_bound() {
        let grid = gen_grid(20, 20);
        let d = diameter_sampled(&grid, 5, 1).unwrap();
        assert!((19..=38).contains(&d));
        assert_eq!(diameter_sampled(&grid, 400, 1).unwrap(), 38);
    }

    #[test]
    fn disconnected_diameter_errors() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(matches!(diameter(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn conductance_examples() {
        let k4 = gen_clique(4);
        let phi = conductance(&k4, &VertexSet::new(vec![0, 1])).unwrap();
        assert!((phi - 4.0 / 6.0).abs() < 1e-12);

        let g = clique_whisker();
        let phi = conductance(&g, &(0..5).collect()).unwrap();
        assert!((phi - 1.0 / 21.0).abs() < 1e-12);

        let phi = conductance(&k4, &VertexSet::new(vec![2])).unwrap();
        assert_eq!(phi, 1.0);
    }

    #[test]
    fn conductance_rejects_trivial_sets() {
        let k4 = gen_clique(4);
        assert!(conductance(&k4, &VertexSet::default()).is_err());
        assert!(conductance(&k4, &(0..4).collect()).is_err());
        assert!(conductance(&k4, &VertexSet::new(vec![9])).is_err());
    }

    #[test]
    fn conductance_is_symmetric() {
        let g = clique_whisker();
        let s: VertexSet = (0..7).collect();
        let t: VertexSet = (7..15).collect();
        let a = conductance(&g, &s).unwrap();
        let b = conductance(&g, &t).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
