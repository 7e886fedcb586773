use std::collections::BTreeSet;

use crate::graph::{k_core, Graph};
use crate::{Error, Result};

/// Largest vertex count the subset dynamic program accepts.
pub const EXACT_TREEWIDTH_MAX_N: usize = 18;

/// Exact treewidth.
///
/// Safe reductions run first: with `low` a lower bound on the treewidth
/// (initially the degeneracy), a simplicial vertex `v` is removed after
/// raising `low` to `deg(v)`, and an almost simplicial vertex with
/// `deg(v) <= low` is eliminated. Both keep `tw = max(low, tw(kernel))`.
/// The kernel is solved by [`treewidth_subset_dp`] and must have at most
/// [`EXACT_TREEWIDTH_MAX_N`] vertices.
pub fn brute_force_treewidth(g: &Graph) -> Result<usize> {
    let (low, kernel) = reduce(g);
    if kernel.n() == 0 {
        return Ok(low);
    }
    Ok(low.max(treewidth_subset_dp(&kernel)?))
}

/// Exact treewidth by dynamic programming over vertex subsets:
/// `TW(S) = min_{v ∈ S} max(TW(S \ v), |Q(S \ v, v)|)`, where `Q(S, v)` is
/// the set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
/// O(2^n · n²) time, 2^n bytes.
pub fn treewidth_subset_dp(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > EXACT_TREEWIDTH_MAX_N {
        return Err(Error::TooLarge(format!(
            "exact treewidth needs at most {EXACT_TREEWIDTH_MAX_N} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let t = tw[rest as usize];
            if t >= best {
                continue;
            }
            let q = q_size(&adj, rest, v);
            best = best.min(t.max(q));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}

fn neighborhood(adj: &[u32], set: u32) -> u32 {
    let mut out = 0;
    let mut bits = set;
    while bits != 0 {
        out |= adj[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    out
}

fn q_size(adj: &[u32], s: u32, v: u32) -> u8 {
    let mut reach = 1u32 << v;
    loop {
        let grown = reach | (neighborhood(adj, reach) & s);
        if grown == reach {
            break;
        }
        reach = grown;
    }
    (neighborhood(adj, reach) & !(s | (1 << v))).count_ones() as u8
}

/// Applies the simplicial and almost-simplicial rules to exhaustion.
/// Returns the lower bound and the remaining kernel.
fn reduce(g: &Graph) -> (usize, Graph) {
    let n = g.n();
    let mut low = k_core(g).k_max as usize;
    let mut adj: Vec<BTreeSet<u32>> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let is_clique = |adj: &[BTreeSet<u32>], set: &[u32]| {
        set.iter()
            .enumerate()
            .all(|(i, a)| set[i + 1..].iter().all(|b| adj[*a as usize].contains(b)))
    };
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbrs: Vec<u32> = adj[v].iter().copied().collect();
            let remove = if is_clique(&adj, &nbrs) {
                low = low.max(nbrs.len());
                true
            } else if nbrs.len() <= low {
                (0..nbrs.len()).any(|skip| {
                    let rest: Vec<u32> = nbrs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &u)| u)
                        .collect();
                    is_clique(&adj, &rest)
                })
            } else {
                false
            };
            if remove {
                for (i, &a) in nbrs.iter().enumerate() {
                    adj[a as usize].remove(&(v as u32));
                    for &b in &nbrs[i + 1..] {
                        adj[a as usize].insert(b);
                        adj[b as usize].insert(a);
                    }
                }
                adj[v].clear();
                alive[v] = false;
                changed = true;
            }
        }
    }
    let keep: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    let mut index = vec![u32::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let edges = keep.iter().flat_map(|&v| {
        let index = &index;
        adj[v as usize]
            .iter()
            .filter(move |&&u| u > v)
            .map(move |&u| (index[v as usize], index[u as usize]))
    });
    let kernel = Graph::from_edges(keep.len(), edges.collect::<Vec<_>>());
    (low, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_cycle, gen_grid, gen_grid_subdivision};

    #[test]
    fn small_known_values() {
        assert_eq!(brute_force_treewidth(&gen_cycle(6)).unwrap(), 2);
        assert_eq!(brute_force_treewidth(&gen_clique(5)).unwrap(), 4);
        assert_eq!(brute_force_treewidth(&gen_grid(3, 3)).unwrap(), 3);
        assert_eq!(treewidth_subset_dp(&gen_grid(3, 3)).unwrap(), 3);
        assert_eq!(treewidth_subset_dp(&gen_grid(4, 4)).unwrap(), 4);
        assert_eq!(treewidth_subset_dp(&gen_cycle(6)).unwrap(), 2);
        assert_eq!(brute_force_treewidth(&Graph::from_edges(1, [])).unwrap(), 0);
    }

    #[test]
    fn reductions_shrink_subdivided_grid() {
        // 21 vertices: above the DP cap, but the subdivision vertices reduce
        // away and leave the 3x3 grid.
        let g = gen_grid_subdivision(3, 1);
        assert_eq!(g.n(), 21);
        assert!(treewidth_subset_dp(&g).is_err());
        let (low, kernel) = reduce(&g);
        assert!(kernel.n() <= 9, "kernel {}", kernel.n());
        assert!(low <= 3);
        assert_eq!(brute_force_treewidth(&g).unwrap(), 3);
    }

    #[test]
    fn too_large_kernel_errors() {
        assert!(matches!(brute_force_treewidth(&gen_grid(5, 5)), Err(Error::TooLarge(_))));
    }
}
