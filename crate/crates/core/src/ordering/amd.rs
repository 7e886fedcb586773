use super::{BucketQueue, EliminationOrdering, Heuristic};
use crate::graph::Graph;
use crate::rng::tie_ranks;

/// Approximate minimum degree.
///
/// Elimination is simulated on a quotient graph: each eliminated vertex
/// becomes an element standing for the clique it created, so no fill edge
/// is ever stored. The selection key is Amestoy's upper bound on the
/// external degree,
///
/// `d̂(i) = min(r − 1, d̂_prev(i) + |Lp \ i|, |A_i| + |Lp \ i| + Σ_e |L_e \ Lp|)`,
///
/// refreshed only for the members of the newest element `Lp`. Elements
/// fully covered by `Lp` are absorbed. On fill-free eliminations the bound
/// is the exact degree.
pub fn order_amd(g: &Graph, seed: u64) -> EliminationOrdering {
    let (order, _) = amd_with_keys(g, tie_ranks(g.n(), seed));
    EliminationOrdering::from_heuristic(order, Heuristic::Amd, seed)
}

/// The ordering plus the degree bound each pivot had when selected.
fn amd_with_keys(g: &Graph, ranks: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
    let n = g.n();
    // Variable-variable adjacency not yet implied by an element.
    let mut a: Vec<Vec<u32>> = (0..n as u32).map(|v| g.neighbors(v).to_vec()).collect();
    // Elements adjacent to each variable.
    let mut e: Vec<Vec<u32>> = vec![Vec::new(); n];
    // Live variables of each element.
    let mut l: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut live_element = vec![false; n];
    let mut dhat: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();

    let mut queue = BucketQueue::new(ranks, n);
    for v in 0..n as u32 {
        queue.insert(v, dhat[v as usize] as u32);
    }

    let mut in_lp = vec![u32::MAX; n];
    // w[e] = |L_e \ Lp| for the current pivot, valid when w_stamp[e] == step.
    let mut w = vec![0usize; n];
    let mut w_stamp = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut keys = Vec::with_capacity(n);
    let mut remaining = n;

    for step in 0..n as u32 {
        let (p, key) = queue.pop_min().expect("queue holds every live vertex");
        let pi = p as usize;
        order.push(p);
        keys.push(key);
        remaining -= 1;

        // Lp = (A_p ∪ ⋃_{e ∈ E_p} L_e) \ p; the elements of E_p are absorbed.
        in_lp[pi] = step;
        let mut lp = Vec::new();
        for &v in &a[pi] {
            if in_lp[v as usize] != step {
                in_lp[v as usize] = step;
                lp.push(v);
            }
        }
        for &el in &e[pi] {
            for &v in &l[el as usize] {
                if in_lp[v as usize] != step {
                    in_lp[v as usize] = step;
                    lp.push(v);
                }
            }
            live_element[el as usize] = false;
            l[el as usize] = Vec::new();
        }
        a[pi] = Vec::new();
        e[pi] = Vec::new();

        // Variables in Lp now reach each other through p, so their direct
        // edges among themselves (and to p) are redundant.
        for &i in &lp {
            let ii = i as usize;
            a[ii].retain(|&v| in_lp[v as usize] != step);
            e[ii].retain(|&el| live_element[el as usize]);
        }

        // |L_e \ Lp| for every older element touching Lp.
        for &i in &lp {
            for &el in &e[i as usize] {
                let ei = el as usize;
                if w_stamp[ei] != step {
                    w_stamp[ei] = step;
                    w[ei] = l[ei].len();
                }
                w[ei] -= 1;
            }
        }

        // Aggressive absorption: an element inside Lp adds nothing.
        for &i in &lp {
            for &el in &e[i as usize] {
                if w[el as usize] == 0 {
                    live_element[el as usize] = false;
                    l[el as usize] = Vec::new();
                }
            }
        }

        let lp_minus_i = lp.len().saturating_sub(1);
        for &i in &lp {
            let ii = i as usize;
            e[ii].retain(|&el| live_element[el as usize]);
            let external: usize = e[ii].iter().map(|&el| w[el as usize]).sum();
            let bound = (remaining - 1)
                .min(dhat[ii] + lp_minus_i)
                .min(a[ii].len() + lp_minus_i + external);
            dhat[ii] = bound;
            queue.update(i, bound as u32);
            e[ii].push(p);
        }
        live_element[pi] = true;
        l[pi] = lp;
    }
    (order, keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_binary_tree, gen_clique, gen_cycle, gen_grid};
    use crate::ordering::{order_mindeg, EliminationGraph};

    fn width(g: &Graph, order: &[u32]) -> usize {
        let mut eg = EliminationGraph::new(g);
        order.iter().map(|&v| eg.eliminate(v).len()).max().unwrap_or(0)
    }

    #[test]
    fn exact_on_fill_free_inputs() {
        let t = gen_binary_tree(7);
        for seed in 0..5 {
            assert_eq!(width(&t, order_amd(&t, seed).as_slice()), 1);
        }
        let k = gen_clique(25);
        assert_eq!(width(&k, order_amd(&k, 3).as_slice()), 24);
        let c = gen_cycle(10);
        assert_eq!(width(&c, order_amd(&c, 3).as_slice()), 2);
    }

    #[test]
    fn comparable_to_mindeg_on_grid() {
        let g = gen_grid(12, 12);
        let amd = width(&g, order_amd(&g, 1).as_slice());
        let md = width(&g, order_mindeg(&g, 1).as_slice());
        assert!(amd * 2 <= md * 3, "amd {amd} mindeg {md}");
    }

    #[test]
    fn bound_never_below_true_degree() {
        for seed in 0..4 {
            let g = crate::generators::gen_er(150, 0.06, seed);
            let (order, keys) = amd_with_keys(&g, tie_ranks(g.n(), seed));
            let mut eg = EliminationGraph::new(&g);
            for (&v, &key) in order.iter().zip(&keys) {
                assert!(eg.degree(v) <= key, "pivot {v}: degree {} > bound {key}", eg.degree(v));
                eg.eliminate(v);
            }
        }
    }
}
