use super::Graph;

/// Per-vertex core numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Vec<u32>,
    pub k_min: u32,
    pub k_max: u32,
}

impl CoreDecomposition {
    pub fn core_of(&self, v: u32) -> u32 {
        self.core[v as usize]
    }

    /// Vertices whose core number is at least `k`.
    pub fn members_of_core(&self, k: u32) -> Vec<u32> {
        (0..self.core.len() as u32)
            .filter(|&v| self.core[v as usize] >= k)
            .collect()
    }
}

/// Core numbers by min-degree peeling over a bucket-sorted vertex array
/// (Batagelj–Zaveršnik), O(n + m).
pub fn k_core(g: &Graph) -> CoreDecomposition {
    let n = g.n();
    if n == 0 {
        return CoreDecomposition {
            core: Vec::new(),
            k_min: 0,
            k_max: 0,
        };
    }
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the degree-d block in `order`.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut order = vec![0u32; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        order[pos[v]] = v as u32;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i] as usize;
        for &u in g.neighbors(v as u32) {
            let u = u as usize;
            if deg[u] > deg[v] {
                // Swap u with the first vertex of its block, then shrink
                // the block by one so u drops to degree deg[u]-1.
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw] as usize;
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    let core: Vec<u32> = deg.into_iter().map(|d| d as u32).collect();
    let k_min = core.iter().copied().min().unwrap_or(0);
    let k_max = core.iter().copied().max().unwrap_or(0);
    CoreDecomposition { core, k_min, k_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_binary_tree, gen_clique, gen_cycle};

    #[test]
    fn trees_cycles_cliques() {
        let tree = k_core(&gen_binary_tree(5));
        assert!(tree.core.iter().all(|&c| c == 1));
        let cyc = k_core(&gen_cycle(12));
        assert!(cyc.core.iter().all(|&c| c == 2));
        let k = k_core(&gen_clique(9));
        assert!(k.core.iter().all(|&c| c == 8));
        assert_eq!((k.k_min, k.k_max), (8, 8));
    }

    #[test]
    fn clique_with_pendant_path() {
        // K_4 on 0..4 plus path 3-4-5.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
        let c = k_core(&g);
        assert_eq!(c.core, vec![3, 3, 3, 3, 1, 1]);
        assert_eq!(c.members_of_core(3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn isolated_vertices_have_core_zero() {
        let g = Graph::from_edges(3, [(0, 1)]);
        assert_eq!(k_core(&g).core, vec![1, 1, 0]);
    }
}
