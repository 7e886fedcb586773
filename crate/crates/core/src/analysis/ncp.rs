use std::io::Write;

use rand::seq::index::sample;
use rayon::prelude::*;

use super::ppr::{check_ppr_params, push_into, sweep_cut, NCPPoint, PushWorkspace};
use crate::graph::{Graph, VertexSet};
use crate::rng::{stream_rng, Stream};
use crate::{Error, Result};

pub const DEFAULT_ALPHAS: [f64; 2] = [0.01, 0.1];
pub const DEFAULT_EPSILONS: [f64; 5] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
pub const DEFAULT_NCP_SEED_COUNT: usize = 500;

/// Parameter grid for [`ncp`].
#[derive(Debug, Clone, PartialEq)]
pub struct NcpParams {
    pub alphas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub seed_count: usize,
}

impl Default for NcpParams {
    fn default() -> Self {
        NcpParams {
            alphas: DEFAULT_ALPHAS.to_vec(),
            epsilons: DEFAULT_EPSILONS.to_vec(),
            seed_count: DEFAULT_NCP_SEED_COUNT,
        }
    }
}

impl NcpParams {
    /// Samples seed vertices with `seed` and runs [`ncp`] over the grid.
    pub fn run(&self, g: &Graph, seed: u64) -> Result<Vec<NCPPoint>> {
        let seeds = default_ncp_seeds(g, self.seed_count, seed);
        ncp(g, &seeds, &self.alphas, &self.epsilons)
    }
}

/// `min(count, #non-isolated)` distinct non-isolated vertices drawn
/// uniformly, returned in increasing order.
pub fn default_ncp_seeds(g: &Graph, count: usize, seed: u64) -> Vec<u32> {
    let pool: Vec<u32> = (0..g.n() as u32).filter(|&v| g.degree(v) > 0).collect();
    let k = count.min(pool.len());
    let mut rng = stream_rng(seed, Stream::NcpSeeds);
    let mut out: Vec<u32> = sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
    out.sort_unstable();
    out
}

/// Logarithmic size bin, 10 per decade: `floor(10 log10 size)`.
pub fn size_bin(size: usize) -> u32 {
    assert!(size > 0, "empty cluster has no size bin");
    (10.0 * (size as f64).log10() + 1e-9).floor() as u32
}

/// Best prefix of one run inside one bin.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    conductance: f64,
    size: usize,
    run: usize,
}

impl Candidate {
    fn better_than(&self, o: &Candidate) -> bool {
        self.conductance
            .total_cmp(&o.conductance)
            .then(self.size.cmp(&o.size))
            .then(self.run.cmp(&o.run))
            .is_lt()
    }
}

fn merge(mut a: Vec<Option<Candidate>>, b: Vec<Option<Candidate>>) -> Vec<Option<Candidate>> {
    for (x, y) in a.iter_mut().zip(b) {
        if let Some(y) = y {
            if x.is_none_or(|x| y.better_than(&x)) {
                *x = Some(y);
            }
        }
    }
    a
}

/// Network community profile.
///
/// Runs the push and sweep for every `(seed, alpha, epsilon)` triple. Every
/// sweep prefix with at most `n/2` vertices is a candidate for the size bin
/// of its length; each bin keeps its least-conductance candidate (ties:
/// smaller size, then earlier run). Runs fan out over the rayon pool, and
/// the reduction is order-independent, so the result does not depend on
/// the thread count. Isolated seeds are skipped. Points come back by
/// increasing size bin.
pub fn ncp(g: &Graph, seeds: &[u32], alphas: &[f64], epsilons: &[f64]) -> Result<Vec<NCPPoint>> {
    for &s in seeds {
        g.check_vertex(s)?;
    }
    let Some(probe) = (0..g.n() as u32).find(|&v| g.degree(v) > 0) else {
        return Err(Error::EmptyGraph);
    };
    for &a in alphas {
        for &e in epsilons {
            check_ppr_params(g, probe, a, e)?;
        }
    }
    let runs: Vec<(u32, f64, f64)> = seeds
        .iter()
        .filter(|&&s| g.degree(s) > 0)
        .flat_map(|&s| alphas.iter().flat_map(move |&a| epsilons.iter().map(move |&e| (s, a, e))))
        .collect();
    let half = g.n() / 2;
    if half == 0 {
        return Ok(Vec::new());
    }
    let n_bins = size_bin(half) as usize + 1;
    let n = g.n();

    let best = runs
        .par_iter()
        .enumerate()
        .map_init(
            || PushWorkspace::new(n),
            |ws, (run, &(s, a, e))| {
                let ppr = push_into(g, s, a, e, usize::MAX, ws);
                let sweep = sweep_cut(g, &ppr);
                let mut bins: Vec<Option<Candidate>> = vec![None; n_bins];
                for (i, phi) in sweep.conductance.iter().enumerate() {
                    if let Some(phi) = *phi {
                        let c = Candidate {
                            conductance: phi,
                            size: i + 1,
                            run,
                        };
                        let slot = &mut bins[size_bin(i + 1) as usize];
                        if slot.is_none_or(|x| c.better_than(&x)) {
                            *slot = Some(c);
                        }
                    }
                }
                bins
            },
        )
        .reduce(|| vec![None; n_bins], merge);

    // Rerun the winning runs to recover member sets.
    let mut out = Vec::new();
    let mut ws = PushWorkspace::new(n);
    for c in best.into_iter().flatten() {
        let (s, a, e) = runs[c.run];
        let sweep = sweep_cut(g, &push_into(g, s, a, e, usize::MAX, &mut ws));
        out.push(NCPPoint {
            size: c.size,
            conductance: c.conductance,
            members: VertexSet::new(sweep.order[..c.size].to_vec()),
            seed_vertex: s,
            alpha: a,
            epsilon: e,
        });
    }
    Ok(out)
}

/// NCP CSV. `members_file` names the companion file written by
/// [`write_ncp_members`]; row `i` references its line `i + 1`.
pub fn write_ncp_csv<W: Write>(
    g: &Graph,
    points: &[NCPPoint],
    members_file: &str,
    comments: &[String],
    mut w: W,
) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "size_bin,best_size,conductance,seed,alpha,epsilon,members_ref")?;
    for (i, p) in points.iter().enumerate() {
        writeln!(
            w,
            "{},{},{:.9e},{},{},{},{}#{}",
            size_bin(p.size),
            p.size,
            p.conductance,
            g.label(p.seed_vertex),
            p.alpha,
            p.epsilon,
            members_file,
            i + 1
        )?;
    }
    Ok(())
}

/// One line per point: size bin, a tab, then the member labels separated
/// by spaces.
pub fn write_ncp_members<W: Write>(g: &Graph, points: &[NCPPoint], mut w: W) -> Result<()> {
    for p in points {
        let labels: Vec<&str> = p.members.iter().map(|v| g.label(v)).collect();
        writeln!(w, "{}\t{}", size_bin(p.size), labels.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_er};
    use crate::graph::{conductance, giant_component};

    fn two_cliques(k: u32) -> Graph {
        let mut edges = Vec::new();
        for off in [0, k] {
            for a in 0..k {
                for b in a + 1..k {
                    edges.push((off + a, off + b));
                }
            }
        }
        edges.push((k - 1, k));
        Graph::from_edges(2 * k as usize, edges)
    }

    #[test]
    fn bins_are_ten_per_decade() {
        assert_eq!(size_bin(1), 0);
        assert_eq!(size_bin(9), 9);
        assert_eq!(size_bin(10), 10);
        assert_eq!(size_bin(100), 20);
        assert_eq!(size_bin(1000), 30);
        assert_eq!(size_bin(999), 29);
    }

    #[test]
    fn two_k10_dip_at_ten() {
        let g = two_cliques(10);
        let seeds: Vec<u32> = (0..20).collect();
        let pts = ncp(&g, &seeds, &DEFAULT_ALPHAS, &[1e-3, 1e-4, 1e-5]).unwrap();
        let best = pts.iter().min_by(|a, b| a.conductance.total_cmp(&b.conductance)).unwrap();
        assert_eq!(best.size, 10);
        assert!((best.conductance - 1.0 / 91.0).abs() < 1e-12);
        let set = best.members.as_slice();
        assert!(set == (0..10).collect::<Vec<_>>() || set == (10..20).collect::<Vec<_>>());
    }

    /// Minimum conductance over all subsets of each size, by enumeration.
    fn brute_profile(g: &Graph) -> Vec<f64> {
        let n = g.n();
        let mut best = vec![f64::INFINITY; n / 2 + 1];
        for mask in 1u32..(1 << n) - 1 {
            let k = mask.count_ones() as usize;
            if k > n / 2 {
                continue;
            }
            let set = VertexSet::new((0..n as u32).filter(|&v| mask >> v & 1 == 1).collect());
            best[k] = best[k].min(conductance(g, &set).unwrap());
        }
        best
    }

    #[test]
    fn clique_profile_is_flat() {
        let g = gen_clique(8);
        let brute = brute_profile(&g);
        let half_split = brute[4];
        assert!((half_split - 4.0 / 7.0).abs() < 1e-12);
        let pts = ncp(&g, &(0..8).collect::<Vec<_>>(), &DEFAULT_ALPHAS, &DEFAULT_EPSILONS).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(p.size <= 4);
            assert!(p.conductance >= brute[p.size] - 1e-12);
            assert!(p.conductance >= half_split - 1e-12);
            assert!((conductance(&g, &p.members).unwrap() - p.conductance).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let g = giant_component(&gen_er(400, 0.006, 4));
        let seeds = default_ncp_seeds(&g, 30, 9);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| ncp(&g, &seeds, &[0.05], &[1e-3, 1e-5]).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_eq!(one, run(3));
        for w in one.windows(2) {
            assert!(size_bin(w[0].size) < size_bin(w[1].size));
        }
    }

    #[test]
    fn seed_sampling() {
        let g = Graph::from_edges(10, [(0, 1), (1, 2), (3, 4)]);
        assert_eq!(default_ncp_seeds(&g, 100, 1), vec![0, 1, 2, 3, 4]);
        let big = gen_er(200, 0.05, 1);
        let a = default_ncp_seeds(&big, 20, 5);
        assert_eq!(a.len(), 20);
        assert_eq!(a, default_ncp_seeds(&big, 20, 5));
        assert_ne!(a, default_ncp_seeds(&big, 20, 6));
    }

    #[test]
    fn csv_references_member_lines() {
        let g = two_cliques(4);
        let pts = ncp(&g, &[0], &[0.1], &[1e-4]).unwrap();
        let mut csv = Vec::new();
        write_ncp_csv(&g, &pts, "m.tsv", &["x".into()], &mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        let mut mem = Vec::new();
        write_ncp_members(&g, &pts, &mut mem).unwrap();
        let mem = String::from_utf8(mem).unwrap();
        assert_eq!(csv.lines().count(), pts.len() + 2);
        assert_eq!(mem.lines().count(), pts.len());
        assert!(csv.lines().nth(2).unwrap().ends_with(",m.tsv#1"));
    }
}
