use super::{BucketQueue, EliminationOrdering, Heuristic};
use crate::graph::Graph;

/// Maximum cardinality search: repeatedly select the unselected vertex with
/// the most selected neighbors. The elimination ordering is the reverse of
/// the selection order, which is a perfect elimination ordering whenever
/// `g` is chordal. Ties go to the lowest vertex index; `seed` is only
/// recorded.
pub fn order_mcs(g: &Graph, seed: u64) -> EliminationOrdering {
    let n = g.n();
    let max_deg = g.max_degree();
    // Key = max_deg - count so the min-queue yields the largest count.
    let mut queue = BucketQueue::new((0..n as u32).collect(), max_deg);
    let mut count = vec![0u32; n];
    for v in 0..n as u32 {
        queue.insert(v, max_deg as u32);
    }
    let mut selected = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((v, _)) = queue.pop_min() {
        selected[v as usize] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            let ui = u as usize;
            if !selected[ui] {
                count[ui] += 1;
                queue.update(u, max_deg as u32 - count[ui]);
            }
        }
    }
    order.reverse();
    EliminationOrdering::from_heuristic(order, Heuristic::Mcs, seed)
}

/// LEX-M (Rose, Tarjan and Lueker).
///
/// Vertices are numbered from `n` down to 1. Each step numbers an
/// unnumbered vertex `v` of lexicographically largest label, then extends
/// the label of every unnumbered `w` reachable from `v` along a path whose
/// inner vertices are unnumbered with labels smaller than `w`'s. Labels are
/// kept as integers ranked among each other: a raised label sits half a
/// step above its old value, realised by doubling and renormalising. The
/// elimination ordering is the numbering order reversed (last numbered is
/// eliminated first), and it yields a minimal triangulation. O(nm).
/// Ties go to the lowest vertex index; `seed` is only recorded.
pub fn order_lexm(g: &Graph, seed: u64) -> EliminationOrdering {
    let n = g.n();
    let mut label = vec![0u32; n];
    let mut numbered = vec![false; n];
    let mut mark = vec![u32::MAX; n];
    let mut reach: Vec<Vec<u32>> = Vec::new();
    let mut raised = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut max_label = 0u32;

    for step in 0..n as u32 {
        // Unnumbered vertex with the largest label, lowest index on ties.
        let v = (0..n as u32)
            .filter(|&u| !numbered[u as usize])
            .max_by_key(|&u| (label[u as usize], std::cmp::Reverse(u)))
            .expect("an unnumbered vertex remains");
        numbered[v as usize] = true;
        order.push(v);
        mark[v as usize] = step;

        reach.clear();
        reach.resize(max_label as usize + 1, Vec::new());
        raised.clear();
        for &w in g.neighbors(v) {
            let wi = w as usize;
            if !numbered[wi] {
                mark[wi] = step;
                reach[label[wi] as usize].push(w);
                raised.push(w);
            }
        }
        // Process reach sets in increasing label order; a path may continue
        // through a vertex only while its label stays below the target's.
        for j in 0..reach.len() {
            while let Some(w) = reach[j].pop() {
                for &z in g.neighbors(w) {
                    let zi = z as usize;
                    if numbered[zi] || mark[zi] == step {
                        continue;
                    }
                    mark[zi] = step;
                    if label[zi] as usize > j {
                        reach[label[zi] as usize].push(z);
                        raised.push(z);
                    } else {
                        reach[j].push(z);
                    }
                }
            }
        }

        for l in label.iter_mut() {
            *l *= 2;
        }
        for &z in &raised {
            label[z as usize] += 1;
        }
        max_label = renormalize(&mut label, &numbered, 2 * max_label + 1);
    }
    order.reverse();
    EliminationOrdering::from_heuristic(order, Heuristic::LexM, seed)
}

/// Maps the labels of unnumbered vertices onto `0..k` preserving order and
/// returns the new maximum.
fn renormalize(label: &mut [u32], numbered: &[bool], bound: u32) -> u32 {
    let mut used = vec![false; bound as usize + 1];
    for (l, &done) in label.iter().zip(numbered) {
        if !done {
            used[*l as usize] = true;
        }
    }
    let mut rank = vec![0u32; used.len()];
    let mut next = 0u32;
    for (r, &u) in rank.iter_mut().zip(&used) {
        *r = next;
        if u {
            next += 1;
        }
    }
    for (l, &done) in label.iter_mut().zip(numbered) {
        *l = if done { 0 } else { rank[*l as usize] };
    }
    next.saturating_sub(1)
}
