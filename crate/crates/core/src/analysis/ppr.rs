use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// An approximate personalized PageRank vector from the push process.
#[derive(Debug, Clone, PartialEq)]
pub struct PprVector {
    /// Nonzero entries of the estimate `p`, by vertex.
    pub p: Vec<(u32, f64)>,
    /// Total mass still held as residual.
    pub residual_mass: f64,
    pub pushes: usize,
}

impl PprVector {
    pub fn mass(&self) -> f64 {
        self.p.iter().map(|&(_, x)| x).sum::<f64>() + self.residual_mass
    }
}

/// Reusable dense buffers for repeated pushes on one graph.
#[derive(Debug, Default)]
pub(crate) struct PushWorkspace {
    p: Vec<f64>,
    r: Vec<f64>,
    queued: Vec<bool>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
}

impl PushWorkspace {
    pub(crate) fn new(n: usize) -> Self {
        PushWorkspace {
            p: vec![0.0; n],
            r: vec![0.0; n],
            queued: vec![false; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn touch(&mut self, v: u32) {
        if self.p[v as usize] == 0.0 && self.r[v as usize] == 0.0 {
            self.touched.push(v);
        }
    }
}

pub(crate) fn check_ppr_params(g: &Graph, seed: u32, alpha: f64, epsilon: f64) -> Result<()> {
    g.check_vertex(seed)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::param(format!("epsilon must be positive, got {epsilon}")));
    }
    if g.degree(seed) == 0 {
        return Err(Error::param(format!("seed vertex {} is isolated", g.label(seed))));
    }
    Ok(())
}

/// Lazy-walk push (Andersen–Chung–Lang).
///
/// Starts with all mass as residual on `seed`. While some `u` holds
/// `r(u) >= epsilon * deg(u)`, a push moves `alpha * r(u)` into `p(u)`,
/// keeps `(1 - alpha) r(u) / 2` at `u` and spreads the other half evenly
/// over its neighbors. Total mass `Σp + Σr` stays 1.
pub fn ppr_push(g: &Graph, seed: u32, alpha: f64, epsilon: f64) -> Result<PprVector> {
    ppr_push_steps(g, seed, alpha, epsilon, usize::MAX)
}

/// [`ppr_push`] stopped after at most `max_pushes` pushes.
pub fn ppr_push_steps(g: &Graph, seed: u32, alpha: f64, epsilon: f64, max_pushes: usize) -> Result<PprVector> {
    check_ppr_params(g, seed, alpha, epsilon)?;
    let mut ws = PushWorkspace::new(g.n());
    Ok(push_into(g, seed, alpha, epsilon, max_pushes, &mut ws))
}

pub(crate) fn push_into(
    g: &Graph,
    seed: u32,
    alpha: f64,
    epsilon: f64,
    max_pushes: usize,
    ws: &mut PushWorkspace,
) -> PprVector {
    ws.touch(seed);
    ws.r[seed as usize] = 1.0;
    ws.queue.push_back(seed);
    ws.queued[seed as usize] = true;
    let mut pushes = 0;
    while let Some(u) = ws.queue.pop_front() {
        let ui = u as usize;
        ws.queued[ui] = false;
        let deg = g.degree(u) as f64;
        if ws.r[ui] < epsilon * deg || pushes >= max_pushes {
            continue;
        }
        pushes += 1;
        let ru = ws.r[ui];
        ws.p[ui] += alpha * ru;
        let stay = (1.0 - alpha) * ru / 2.0;
        ws.r[ui] = stay;
        let share = stay / deg;
        for &v in g.neighbors(u) {
            let vi = v as usize;
            ws.touch(v);
            ws.r[vi] += share;
            if !ws.queued[vi] && ws.r[vi] >= epsilon * g.degree(v) as f64 {
                ws.queued[vi] = true;
                ws.queue.push_back(v);
            }
        }
        if !ws.queued[ui] && ws.r[ui] >= epsilon * deg {
            ws.queued[ui] = true;
            ws.queue.push_back(u);
        }
    }
    let mut p = Vec::new();
    let mut residual_mass = 0.0;
    ws.touched.sort_unstable();
    for &v in &ws.touched {
        let vi = v as usize;
        if ws.p[vi] > 0.0 {
            p.push((v, ws.p[vi]));
        }
        residual_mass += ws.r[vi];
        ws.p[vi] = 0.0;
        ws.r[vi] = 0.0;
        ws.queued[vi] = false;
    }
    ws.touched.clear();
    ws.queue.clear();
    PprVector { p, residual_mass, pushes }
}

/// Sweep over the support of a PPR vector by decreasing `p(v)/deg(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub order: Vec<u32>,
    /// Conductance of each prefix `order[..k+1]`, or `None` when the prefix
    /// exceeds `n/2` vertices or has an empty side by volume.
    pub conductance: Vec<Option<f64>>,
    /// Length of the first prefix of least conductance, if any is valid.
    pub best_len: Option<usize>,
}

pub fn sweep_cut(g: &Graph, ppr: &PprVector) -> SweepResult {
    let mut order: Vec<(u32, f64)> = ppr
        .p
        .iter()
        .map(|&(v, x)| (v, x / g.degree(v) as f64))
        .collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let order: Vec<u32> = order.into_iter().map(|(v, _)| v).collect();
    let pos: FxHashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let two_m = 2 * g.m();
    let half = g.n() / 2;
    let mut vol = 0usize;
    let mut cut = 0isize;
    let mut conductance = Vec::with_capacity(order.len());
    let mut best: Option<(f64, usize)> = None;
    for (i, &v) in order.iter().enumerate() {
        let deg = g.degree(v);
        let inside = g
            .neighbors(v)
            .iter()
            .filter(|u| pos.get(u).is_some_and(|&j| j < i))
            .count();
        vol += deg;
        cut += deg as isize - 2 * inside as isize;
        let denom = vol.min(two_m - vol);
        let phi = (i < half && denom > 0).then(|| cut as f64 / denom as f64);
        if let Some(phi) = phi {
            if best.is_none_or(|(b, _)| phi < b) {
                best = Some((phi, i + 1));
            }
        }
        conductance.push(phi);
    }
    SweepResult {
        order,
        conductance,
        best_len: best.map(|(_, k)| k),
    }
}

/// The best-conductance sweep set of one PPR run.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPPoint {
    pub size: usize,
    pub conductance: f64,
    pub members: VertexSet,
    pub seed_vertex: u32,
    pub alpha: f64,
    pub epsilon: f64,
}

/// Runs the push from `seed_vertex` and returns the sweep prefix of least
/// conductance among those with at most `n/2` vertices.
pub fn ppr_cluster(g: &Graph, seed_vertex: u32, alpha: f64, epsilon: f64) -> Result<NCPPoint> {
    let ppr = ppr_push(g, seed_vertex, alpha, epsilon)?;
    let sweep = sweep_cut(g, &ppr);
    let k = sweep
        .best_len
        .ok_or_else(|| Error::param("no sweep prefix has a valid conductance"))?;
    Ok(NCPPoint {
        size: k,
        conductance: sweep.conductance[k - 1].expect("best prefix is valid"),
        members: VertexSet::new(sweep.order[..k].to_vec()),
        seed_vertex,
        alpha,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_er};
    use crate::graph::{conductance, giant_component};

    /// K_5 hanging by one edge off a 20-cycle.
    fn clique_whisker() -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..20).map(|i| (i, (i + 1) % 20)).collect();
        for a in 20..25 {
            for b in a + 1..25 {
                edges.push((a, b));
            }
        }
        edges.push((20, 0));
        Graph::from_edges(25, edges)
    }

    #[test]
    fn mass_is_conserved_at_every_step() {
        let g = giant_component(&gen_er(300, 0.02, 3));
        for steps in [0, 1, 2, 5, 17, 100, 1000, usize::MAX] {
            let v = ppr_push_steps(&g, 0, 0.05, 1e-6, steps).unwrap();
            assert!((v.mass() - 1.0).abs() < 1e-9, "after {steps}: {}", v.mass());
        }
    }

    #[test]
    fn residuals_below_threshold_at_the_end() {
        let g = clique_whisker();
        let v = ppr_push(&g, 22, 0.1, 1e-4).unwrap();
        assert!(v.pushes > 0);
        let total_p: f64 = v.p.iter().map(|x| x.1).sum();
        assert!(total_p > 0.5);
        assert!(v.residual_mass <= 1e-4 * (2 * g.m()) as f64);
    }

    #[test]
    fn whisker_clique_is_found() {
        let g = clique_whisker();
        for seed in 20..25 {
            let pt = ppr_cluster(&g, seed, 0.1, 1e-5).unwrap();
            assert_eq!(pt.members.as_slice(), &[20, 21, 22, 23, 24]);
            assert!((pt.conductance - 1.0 / 21.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_best_dominates_every_prefix() {
        let g = giant_component(&gen_er(200, 0.03, 8));
        let ppr = ppr_push(&g, 5, 0.05, 1e-5).unwrap();
        let sweep = sweep_cut(&g, &ppr);
        let k = sweep.best_len.unwrap();
        let best = sweep.conductance[k - 1].unwrap();
        for (i, phi) in sweep.conductance.iter().enumerate() {
            if let Some(phi) = phi {
                // Recompute from scratch.
                let set = VertexSet::new(sweep.order[..=i].to_vec());
                let direct = conductance(&g, &set).unwrap();
                assert!((direct - phi).abs() < 1e-12);
                assert!(best <= direct + 1e-15);
            }
        }
    }

    #[test]
    fn clique_seed_never_worse_than_singleton() {
        let k = gen_clique(12);
        let pt = ppr_cluster(&k, 3, 0.1, 1e-4).unwrap();
        let single = conductance(&k, &VertexSet::new(vec![3])).unwrap();
        assert!(pt.conductance <= single);
        assert!(pt.size <= 6);
    }

    #[test]
    fn bad_parameters() {
        let g = Graph::from_edges(3, [(0, 1)]);
        assert!(ppr_cluster(&g, 2, 0.1, 1e-4).is_err());
        assert!(ppr_cluster(&g, 0, 1.0, 1e-4).is_err());
        assert!(ppr_cluster(&g, 0, 0.1, 0.0).is_err());
        assert!(ppr_cluster(&g, 9, 0.1, 1e-4).is_err());
    }
}
