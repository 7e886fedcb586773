//! Exact metric tree-likeness.
//!
//! Brute-force four-point δ, geodesic cycle checks and an end-to-end check
//! of `δ ≤ tl ≤ (tw+1)·ν` on the k-subdivided n × n grid, whose treewidth
//! (`n`), longest geodesic cycle (`4(k+1)`) and treelength (`n(k+1)`) are
//! known in closed form.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::generators::SubdividedGrid;
use crate::graph::{bfs_distances, Graph};
use crate::ordering::{order, Heuristic};
use crate::treedecomp::{brute_force_treewidth, gavril_td, td_length};
use crate::{Error, Result};

/// Default vertex cap for [`delta_exact`].
pub const DELTA_DEFAULT_CAP: usize = 300;
/// Vertex cap for [`longest_geodesic_cycle_bruteforce`].
pub const GEODESIC_BRUTEFORCE_MAX_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricProfile {
    pub n: usize,
    pub diameter: u32,
    /// `2δ`, always an integer.
    pub twice_delta: u32,
    /// Lexicographically first quadruple attaining δ (`None` below 4 vertices).
    pub witness: Option<[u32; 4]>,
}

impl MetricProfile {
    pub fn delta(&self) -> f64 {
        self.twice_delta as f64 / 2.0
    }
}

/// All-pairs BFS distances, row-major. Errors on disconnected input.
pub fn distance_matrix(g: &Graph) -> Result<Vec<u32>> {
    g.require_connected()?;
    let rows: Vec<Vec<u32>> = (0..g.n() as u32)
        .into_par_iter()
        .map(|s| bfs_distances(g, s))
        .collect::<Result<_>>()?;
    Ok(rows.concat())
}

/// Two largest-gap of the three pair sums of a quadruple, i.e. `2δ(x,y,u,v)`.
#[inline]
fn four_point(dxy: u32, duv: u32, dxu: u32, dyv: u32, dxv: u32, dyu: u32) -> u32 {
    let s1 = dxy + duv;
    let s2 = dxu + dyv;
    let s3 = dxv + dyu;
    let (hi, mid) = if s1 >= s2 { (s1, s2) } else { (s2, s1) };
    if s3 >= hi {
        s3 - hi
    } else {
        hi - mid.max(s3)
    }
}

/// Gromov δ by the four-point condition over every quadruple, with the
/// default cap of [`DELTA_DEFAULT_CAP`] vertices.
pub fn delta_exact(g: &Graph) -> Result<MetricProfile> {
    delta_exact_capped(g, Some(DELTA_DEFAULT_CAP))
}

/// [`delta_exact`] with an explicit cap; `None` lifts it. O(n⁴) time and
/// O(n²) memory. The outer loop is split over the rayon pool and reduced
/// by (largest δ, first quadruple), so the result is thread-count
/// independent.
pub fn delta_exact_capped(g: &Graph, cap: Option<usize>) -> Result<MetricProfile> {
    let n = g.n();
    if let Some(cap) = cap {
        if n > cap {
            return Err(Error::TooLarge(format!("{n} vertices exceed the delta cap of {cap}")));
        }
    }
    let d = distance_matrix(g)?;
    let diameter = d.iter().copied().max().unwrap_or(0);
    let at = |a: usize, b: usize| d[a * n + b];
    let best = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best: Option<(u32, [u32; 4])> = None;
            for y in x + 1..n {
                let dxy = at(x, y);
                for u in y + 1..n {
                    let (dxu, dyu) = (at(x, u), at(y, u));
                    let ru = &d[u * n..(u + 1) * n];
                    let rx = &d[x * n..(x + 1) * n];
                    let ry = &d[y * n..(y + 1) * n];
                    for v in u + 1..n {
                        let t = four_point(dxy, ru[v], dxu, ry[v], rx[v], dyu);
                        if best.is_none_or(|(b, _)| t > b) {
                            best = Some((t, [x as u32, y as u32, u as u32, v as u32]));
                        }
                    }
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
                (a, None) => a,
                (None, b) => b,
            },
        );
    Ok(MetricProfile {
        n,
        diameter,
        twice_delta: best.map_or(0, |b| b.0),
        witness: best.map(|b| b.1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicCycleCheck {
    pub cycle: Vec<u32>,
    /// Consecutive vertices (and last-first) are adjacent.
    pub is_cycle: bool,
    /// A cycle on which every pair is as far apart as in the graph.
    pub is_geodesic: bool,
    pub length: usize,
}

/// Checks that `cycle` (a closed vertex sequence, first vertex not
/// repeated) is a cycle of `g` and whether it is geodesic. Errors on fewer
/// than three or repeated vertices.
pub fn check_geodesic_cycle(g: &Graph, cycle: &[u32]) -> Result<GeodesicCycleCheck> {
    for &v in cycle {
        g.check_vertex(v)?;
    }
    let len = cycle.len();
    if len < 3 {
        return Err(Error::param("a cycle needs at least three vertices"));
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::param("cycle repeats a vertex"));
    }
    let is_cycle = (0..len).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % len]));
    let is_geodesic = is_cycle
        && cycle.iter().enumerate().all(|(i, &a)| {
            let dist = bfs_distances(g, a).expect("checked vertex");
            (i + 1..len).all(|j| {
                let along = (j - i).min(len - (j - i)) as u32;
                dist[cycle[j] as usize] == along
            })
        });
    Ok(GeodesicCycleCheck {
        cycle: cycle.to_vec(),
        is_cycle,
        is_geodesic,
        length: len,
    })
}

/// ν(G) by enumerating simple cycles. Each cycle is grown from its
/// smallest vertex; a partial path is dropped as soon as two of its
/// vertices at most half the current length apart along it are closer in
/// the graph, since no geodesic cycle can extend it. 0 when acyclic.
pub fn longest_geodesic_cycle_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > GEODESIC_BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the cycle enumeration cap of {GEODESIC_BRUTEFORCE_MAX_N}"
        )));
    }
    let mut d = vec![u32::MAX; n * n];
    for s in 0..n as u32 {
        let row = bfs_distances(g, s)?;
        d[s as usize * n..(s as usize + 1) * n].copy_from_slice(&row);
    }
    let mut best = 0;
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for s in 0..n as u32 {
        path.push(s);
        on_path[s as usize] = true;
        grow(g, &d, s, &mut path, &mut on_path, &mut best);
        on_path[s as usize] = false;
        path.pop();
    }
    Ok(best)
}

fn grow(g: &Graph, d: &[u32], s: u32, path: &mut Vec<u32>, on_path: &mut [bool], best: &mut usize) {
    let n = on_path.len();
    let last = *path.last().expect("path starts at s");
    for &w in g.neighbors(last) {
        if w == s && path.len() >= 3 && path[1] < last {
            let len = path.len();
            let geodesic = (0..len).all(|i| {
                (i + 1..len).all(|j| d[path[i] as usize * n + path[j] as usize] == (j - i).min(len - (j - i)) as u32)
            });
            if geodesic {
                *best = (*best).max(len);
            }
        }
        if w <= s || on_path[w as usize] {
            continue;
        }
        path.push(w);
        let j = path.len() - 1;
        let reach = path.len() / 2;
        let ok = (j.saturating_sub(reach)..j).all(|i| d[path[i] as usize * n + w as usize] == (j - i) as u32);
        if ok {
            on_path[w as usize] = true;
            grow(g, d, s, path, on_path, best);
            on_path[w as usize] = false;
        }
        path.pop();
    }
}

/// One heuristic's decomposition of the subdivided grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicLength {
    pub heuristic: Heuristic,
    pub width: usize,
    pub td_length: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Report {
    pub n: usize,
    pub k: usize,
    pub vertices: usize,
    pub metric: MetricProfile,
    /// `(n-1)(k+1) - 1`.
    pub delta_closed_form: i64,
    pub treewidth: usize,
    /// Whether `treewidth` comes from the exact oracle rather than `n`.
    pub treewidth_exact: bool,
    /// `4(k+1)`.
    pub nu: usize,
    /// ν by cycle enumeration, when the graph is small enough.
    pub nu_bruteforce: Option<usize>,
    /// Boundary of the top-left cell.
    pub cell_cycle: GeodesicCycleCheck,
    /// `n(k+1)`.
    pub tl_analytic: usize,
    pub lengths: Vec<HeuristicLength>,
}

impl Theorem3Report {
    pub fn min_td_length(&self) -> Option<u32> {
        self.lengths.iter().map(|l| l.td_length).min()
    }

    /// `(tw+1)·ν`.
    pub fn upper_bound(&self) -> usize {
        (self.treewidth + 1) * self.nu
    }

    /// `δ ≤ min td_length ≤ (tw+1)·ν`.
    pub fn chain_holds(&self) -> bool {
        self.min_td_length().is_some_and(|tl| {
            self.metric.twice_delta <= 2 * tl && tl as usize <= self.upper_bound()
        })
    }

    /// The chain with every heuristic's decomposition in place of the minimum.
    pub fn chain_holds_for_each(&self) -> bool {
        !self.lengths.is_empty()
            && self.lengths.iter().all(|l| {
                self.metric.twice_delta <= 2 * l.td_length && l.td_length as usize <= self.upper_bound()
            })
    }

    pub fn delta_matches_closed_form(&self) -> bool {
        self.metric.twice_delta as i64 == 2 * self.delta_closed_form
    }

    pub fn treewidth_matches(&self) -> bool {
        self.treewidth == self.n
    }

    pub fn cell_cycle_ok(&self) -> bool {
        self.cell_cycle.is_geodesic && self.cell_cycle.length == self.nu
    }

    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        let kv = |s: &mut String, k: &str, v: String| writeln!(s, "{k}={v}").expect("string write");
        kv(&mut s, "n", self.n.to_string());
        kv(&mut s, "k", self.k.to_string());
        kv(&mut s, "vertices", self.vertices.to_string());
        kv(&mut s, "diameter", self.metric.diameter.to_string());
        kv(&mut s, "delta", fmt_half(self.metric.twice_delta));
        kv(&mut s, "delta_closed_form", self.delta_closed_form.to_string());
        kv(&mut s, "delta_matches_closed_form", self.delta_matches_closed_form().to_string());
        kv(&mut s, "tw", self.treewidth.to_string());
        kv(&mut s, "tw_source", if self.treewidth_exact { "exact" } else { "analytic" }.to_string());
        kv(&mut s, "nu", self.nu.to_string());
        if let Some(nb) = self.nu_bruteforce {
            kv(&mut s, "nu_bruteforce", nb.to_string());
        }
        kv(&mut s, "cell_cycle_length", self.cell_cycle.length.to_string());
        kv(&mut s, "cell_cycle_geodesic", self.cell_cycle.is_geodesic.to_string());
        kv(&mut s, "tl_analytic", self.tl_analytic.to_string());
        for l in &self.lengths {
            kv(&mut s, &format!("td_length.{}", l.heuristic.name()), l.td_length.to_string());
            kv(&mut s, &format!("width.{}", l.heuristic.name()), l.width.to_string());
        }
        if let Some(tl) = self.min_td_length() {
            kv(&mut s, "td_length_min", tl.to_string());
        }
        kv(&mut s, "upper_bound", self.upper_bound().to_string());
        kv(&mut s, "chain_holds", self.chain_holds().to_string());
        s
    }
}

/// Renders `x/2` without a trailing `.0` for whole numbers.
pub fn fmt_half(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        (twice / 2).to_string()
    } else {
        format!("{}.5", twice / 2)
    }
}

/// Builds the k-subdivided n × n grid and collects every quantity of the
/// `δ ≤ tl ≤ (tw+1)·ν` chain: exact δ, exact treewidth when the oracle can
/// take the graph (otherwise the analytic `n`), the analytic ν with a cell
/// boundary check, and the tree length of each heuristic's decomposition.
pub fn verify_theorem3(n: usize, k: usize, heuristics: &[Heuristic], seed: u64) -> Result<Theorem3Report> {
    if n < 2 {
        return Err(Error::param("the grid needs n >= 2"));
    }
    let layout = SubdividedGrid { n, k };
    let vertices = layout.vertex_count();
    if vertices > DELTA_DEFAULT_CAP {
        return Err(Error::TooLarge(format!(
            "the subdivided grid has {vertices} vertices, above the delta cap of {DELTA_DEFAULT_CAP}"
        )));
    }
    let g = layout.build();
    let metric = delta_exact(&g)?;
    let (treewidth, treewidth_exact) = match brute_force_treewidth(&g) {
        Ok(tw) => (tw, true),
        Err(Error::TooLarge(_)) => (n, false),
        Err(e) => return Err(e),
    };
    let nu_bruteforce = (vertices <= GEODESIC_BRUTEFORCE_MAX_N)
        .then(|| longest_geodesic_cycle_bruteforce(&g))
        .transpose()?;
    let cell_cycle = check_geodesic_cycle(&g, &layout.cell_cycle(0, 0))?;
    let lengths = heuristics
        .iter()
        .map(|&h| {
            let td = gavril_td(&g, &order(&g, h, seed));
            Ok(HeuristicLength {
                heuristic: h,
                width: td.width(),
                td_length: td_length(&g, &td)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Theorem3Report {
        n,
        k,
        vertices,
        metric,
        delta_closed_form: (n as i64 - 1) * (k as i64 + 1) - 1,
        treewidth,
        treewidth_exact,
        nu: 4 * (k + 1),
        nu_bruteforce,
        cell_cycle,
        tl_analytic: n * (k + 1),
        lengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_binary_tree, gen_clique, gen_cycle, gen_grid, gen_grid_subdivision};

    #[test]
    fn trees_are_zero_hyperbolic() {
        let t = gen_binary_tree(4);
        let m = delta_exact(&t).unwrap();
        assert_eq!(m.twice_delta, 0);
        assert_eq!(m.diameter, 8);
    }

    #[test]
    fn cycles_and_cliques() {
        // C_4: the pair sums are 2, 2 and 4.
        assert_eq!(delta_exact(&gen_cycle(4)).unwrap().twice_delta, 2);
        assert_eq!(delta_exact(&gen_clique(6)).unwrap().twice_delta, 0);
        // C_8 on {0, 2, 4, 6}: sums 4, 8, 4.
        let m = delta_exact(&gen_cycle(8)).unwrap();
        assert_eq!(m.twice_delta, 4);
        let [x, y, u, v] = m.witness.unwrap();
        let d = distance_matrix(&gen_cycle(8)).unwrap();
        let at = |a: u32, b: u32| d[a as usize * 8 + b as usize];
        assert_eq!(four_point(at(x, y), at(u, v), at(x, u), at(y, v), at(x, v), at(y, u)), 4);
    }

    #[test]
    fn grid_delta_against_naive_loop() {
        let g = gen_grid(3, 3);
        let d = distance_matrix(&g).unwrap();
        let n = g.n();
        let mut naive = 0;
        for x in 0..n {
            for y in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        let mut s = [d[x * n + y] + d[u * n + v], d[x * n + u] + d[y * n + v], d[x * n + v] + d[y * n + u]];
                        s.sort_unstable();
                        naive = naive.max(s[2] - s[1]);
                    }
                }
            }
        }
        assert_eq!(delta_exact(&g).unwrap().twice_delta, naive);
    }

    #[test]
    fn cap_and_disconnection() {
        let big = gen_cycle(301);
        assert!(matches!(delta_exact(&big), Err(Error::TooLarge(_))));
        assert_eq!(delta_exact_capped(&gen_cycle(12), None).unwrap().twice_delta, 6);
        let split = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]);
        assert!(matches!(delta_exact(&split), Err(Error::Disconnected)));
    }

    #[test]
    fn thread_count_does_not_matter() {
        let g = gen_grid_subdivision(3, 1);
        let run = |t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| delta_exact(&g).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn geodesic_cycle_checks() {
        let c = gen_cycle(9);
        let r = check_geodesic_cycle(&c, &(0..9).collect::<Vec<_>>()).unwrap();
        assert!(r.is_cycle && r.is_geodesic);
        let k4 = gen_clique(4);
        let r = check_geodesic_cycle(&k4, &[0, 1, 2, 3]).unwrap();
        assert!(r.is_cycle && !r.is_geodesic);
        let r = check_geodesic_cycle(&c, &[0, 1, 3]).unwrap();
        assert!(!r.is_cycle);
        assert!(check_geodesic_cycle(&c, &[0, 1, 0]).is_err());
        assert!(check_geodesic_cycle(&c, &[0, 1]).is_err());
        let g = gen_grid_subdivision(2, 1);
        let boundary = SubdividedGrid { n: 2, k: 1 }.cell_cycle(0, 0);
        let r = check_geodesic_cycle(&g, &boundary).unwrap();
        assert!(r.is_geodesic);
        assert_eq!(r.length, 8);
    }

    #[test]
    fn longest_geodesic_cycle_small_cases() {
        assert_eq!(longest_geodesic_cycle_bruteforce(&gen_binary_tree(2)).unwrap(), 0);
        assert_eq!(longest_geodesic_cycle_bruteforce(&gen_cycle(10)).unwrap(), 10);
        assert_eq!(longest_geodesic_cycle_bruteforce(&gen_grid(3, 3)).unwrap(), 4);
        assert_eq!(longest_geodesic_cycle_bruteforce(&gen_clique(6)).unwrap(), 3);
        // Two 5-cycles sharing an edge: the 8-cycle around them is not
        // geodesic, each pentagon is.
        let theta = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 4)]);
        assert_eq!(longest_geodesic_cycle_bruteforce(&theta).unwrap(), 5);
        assert!(longest_geodesic_cycle_bruteforce(&gen_cycle(15)).is_err());
    }

    #[test]
    fn half_formatting() {
        assert_eq!(fmt_half(0), "0");
        assert_eq!(fmt_half(3), "1.5");
        assert_eq!(fmt_half(8), "4");
    }

    #[test]
    fn report_on_three_by_three() {
        let r = verify_theorem3(3, 0, &Heuristic::ALL, 1).unwrap();
        assert_eq!(r.vertices, 9);
        assert!(r.treewidth_exact);
        assert_eq!(r.treewidth, 3);
        assert_eq!(r.nu, 4);
        assert_eq!(r.nu_bruteforce, Some(4));
        assert_eq!(r.tl_analytic, 3);
        assert!(r.cell_cycle_ok());
        assert!(r.chain_holds_for_each());
        assert_eq!(r.lengths.len(), 6);
        assert!(r.to_key_values().contains("chain_holds=true\n"));
        assert!(verify_theorem3(1, 0, &[], 0).is_err());
        assert!(verify_theorem3(10, 3, &[], 0).is_err());
    }
}
