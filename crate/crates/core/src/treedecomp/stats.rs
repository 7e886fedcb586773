use std::collections::VecDeque;
use std::io::Write;

use rayon::prelude::*;

use super::{validate_td, TreeDecomposition};
use crate::graph::{bfs_into, CoreDecomposition, Graph, UNREACHABLE};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BagStats {
    pub cardinality: usize,
    /// `|E(G[X])| / C(|X|, 2)`; 1.0 for a single-vertex bag.
    pub density: f64,
    /// Eccentricity of the bag in the decomposition tree.
    pub eccentricity: u32,
    /// Mean core number of the bag's members.
    pub avg_core: f64,
}

impl BagStats {
    pub fn width(&self) -> usize {
        self.cardinality.saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TDStats {
    pub n_bags: usize,
    /// Largest bag eccentricity in the tree.
    pub td_diameter: u32,
    pub width_max: usize,
    pub width_median: f64,
    pub cardinality_max: usize,
    pub cardinality_median: f64,
    pub density_median: f64,
    pub per_bag: Vec<BagStats>,
}

impl TDStats {
    /// One row per bag, then a row with id `summary` carrying the maximum
    /// cardinality, median density, tree diameter and mean `avg_core` over
    /// bags. Summary medians and widths follow as `#` comments.
    pub fn write_csv<W: Write>(&self, comments: &[String], mut w: W) -> Result<()> {
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(
            w,
            "# n_bags={} td_diameter={} width_max={} width_median={} cardinality_max={} cardinality_median={} density_median={}",
            self.n_bags,
            self.td_diameter,
            self.width_max,
            self.width_median,
            self.cardinality_max,
            self.cardinality_median,
            self.density_median
        )?;
        writeln!(w, "id,cardinality,density,eccentricity,avg_core")?;
        for (i, b) in self.per_bag.iter().enumerate() {
            writeln!(w, "{},{},{:.6},{},{:.6}", i + 1, b.cardinality, b.density, b.eccentricity, b.avg_core)?;
        }
        let mean_core = if self.per_bag.is_empty() {
            0.0
        } else {
            self.per_bag.iter().map(|b| b.avg_core).sum::<f64>() / self.per_bag.len() as f64
        };
        writeln!(
            w,
            "summary,{},{:.6},{},{:.6}",
            self.cardinality_max, self.density_median, self.td_diameter, mean_core
        )?;
        Ok(())
    }
}

/// Median of a non-empty list (mean of the middle pair for even length).
pub(crate) fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        (values[k / 2 - 1] + values[k / 2]) / 2.0
    }
}

/// Eccentricity of every bag in the decomposition tree, from the two ends
/// of a longest path: `ecc(x) = max(d(a, x), d(b, x))`.
pub fn tree_eccentricities(td: &TreeDecomposition) -> Vec<u32> {
    let nb = td.n_bags();
    if nb == 0 {
        return Vec::new();
    }
    let adj = td.tree_adjacency();
    let bfs = |s: u32| {
        let mut dist = vec![UNREACHABLE; nb];
        let mut queue = VecDeque::from([s]);
        dist[s as usize] = 0;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x as usize] {
                if dist[y as usize] == UNREACHABLE {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    };
    let farthest = |d: &[u32]| {
        (0..nb as u32)
            .max_by_key(|&x| (d[x as usize], std::cmp::Reverse(x)))
            .expect("non-empty")
    };
    let d0 = bfs(0);
    let a = farthest(&d0);
    let da = bfs(a);
    let b = farthest(&da);
    let db = bfs(b);
    da.iter().zip(&db).map(|(&x, &y)| x.max(y)).collect()
}

fn require_valid(g: &Graph, td: &TreeDecomposition) -> Result<()> {
    match validate_td(g, td).first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
    }
}

/// Bag and tree statistics of a valid decomposition.
pub fn td_stats(g: &Graph, td: &TreeDecomposition, cores: &CoreDecomposition) -> Result<TDStats> {
    require_valid(g, td)?;
    let ecc = tree_eccentricities(td);
    let n = g.n();
    let per_bag: Vec<BagStats> = td
        .bags
        .par_iter()
        .zip(ecc.par_iter())
        .map_init(
            || vec![false; n],
            |in_bag, (bag, &eccentricity)| {
                for &v in bag {
                    in_bag[v as usize] = true;
                }
                let mut twice_edges = 0usize;
                for &v in bag {
                    twice_edges += g.neighbors(v).iter().filter(|&&u| in_bag[u as usize]).count();
                }
                for &v in bag {
                    in_bag[v as usize] = false;
                }
                let c = bag.len();
                let density = if c < 2 {
                    1.0
                } else {
                    twice_edges as f64 / (c * (c - 1)) as f64
                };
                let avg_core = bag.iter().map(|&v| cores.core_of(v) as f64).sum::<f64>() / c.max(1) as f64;
                BagStats {
                    cardinality: c,
                    density,
                    eccentricity,
                    avg_core,
                }
            },
        )
        .collect();
    let mut cards: Vec<f64> = per_bag.iter().map(|b| b.cardinality as f64).collect();
    let mut dens: Vec<f64> = per_bag.iter().map(|b| b.density).collect();
    let cardinality_median = median(&mut cards);
    Ok(TDStats {
        n_bags: td.n_bags(),
        td_diameter: ecc.iter().copied().max().unwrap_or(0),
        width_max: td.width(),
        width_median: (cardinality_median - 1.0).max(0.0),
        cardinality_max: td.max_cardinality(),
        cardinality_median,
        density_median: median(&mut dens),
        per_bag,
    })
}

/// Length of a decomposition: the largest distance in `g` between two
/// vertices sharing a bag.
///
/// One BFS per vertex `u`, reading distances to the members of every bag
/// holding `u`: O(n·m + Σ|X_i|²).
pub fn td_length(g: &Graph, td: &TreeDecomposition) -> Result<u32> {
    require_valid(g, td)?;
    g.require_connected()?;
    let n = g.n();
    let bags_of = td.bags_of_vertices(n);
    let best = (0..n as u32)
        .into_par_iter()
        .map_init(
            || (vec![UNREACHABLE; n], VecDeque::new()),
            |(dist, queue), u| {
                dist.fill(UNREACHABLE);
                bfs_into(g, u, dist, queue);
                bags_of[u as usize]
                    .iter()
                    .flat_map(|&b| td.bags[b as usize].iter())
                    .map(|&w| dist[w as usize])
                    .max()
                    .unwrap_or(0)
            },
        )
        .max()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_cycle, gen_grid};
    use crate::graph::k_core;
    use crate::ordering::{order_mindeg, EliminationOrdering};
    use crate::treedecomp::gavril_td;

    #[test]
    fn clique_single_bag() {
        let k = gen_clique(100);
        let td = gavril_td(&k, &order_mindeg(&k, 0));
        let s = td_stats(&k, &td, &k_core(&k)).unwrap();
        assert_eq!(s.n_bags, 1);
        assert_eq!(s.td_diameter, 0);
        assert_eq!(s.density_median, 1.0);
        assert_eq!((s.cardinality_max, s.width_max), (100, 99));
        assert_eq!(s.per_bag[0].avg_core, 99.0);
        assert_eq!(td_length(&k, &td).unwrap(), 1);
    }

    #[test]
    fn path_edge_bags() {
        let g = Graph::from_edges(6, (0..5).map(|i| (i, i + 1)));
        let td = gavril_td(&g, &EliminationOrdering::external((0..6).collect()).unwrap());
        assert!(td.bags.iter().all(|b| b.len() == 2));
        assert_eq!(td_length(&g, &td).unwrap(), 1);
        let s = td_stats(&g, &td, &k_core(&g)).unwrap();
        assert_eq!(s.td_diameter, 4);
        assert_eq!(s.density_median, 1.0);
    }

    #[test]
    fn tree_eccentricity_of_star() {
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0], vec![0], vec![0]],
            vec![(0, 1), (0, 2), (2, 3)],
            0,
            "hand",
        );
        assert_eq!(tree_eccentricities(&td), vec![2, 3, 2, 3]);
    }

    #[test]
    fn invalid_rejected_and_csv_shape() {
        let g = gen_cycle(5);
        let bad = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![], 0, "hand");
        assert!(matches!(td_stats(&g, &bad, &k_core(&g)), Err(Error::InvalidDecomposition(_))));
        let grid = gen_grid(4, 4);
        let td = gavril_td(&grid, &order_mindeg(&grid, 1));
        let s = td_stats(&grid, &td, &k_core(&grid)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&["x".into()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "id,cardinality,density,eccentricity,avg_core");
        assert_eq!(rows.len(), s.n_bags + 2);
        assert!(rows.last().unwrap().starts_with("summary,"));
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
