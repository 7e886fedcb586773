use std::collections::BTreeMap;
use std::io::Write;

use crate::graph::{CoreDecomposition, Graph};
use crate::treedecomp::{td_stats, TDStats, TreeDecomposition};
use crate::Result;

/// The three per-decomposition series behind the bag plots.
#[derive(Debug, Clone, PartialEq)]
pub struct BagProfiles {
    /// `(cardinality, bag count, fraction of bags with cardinality <= it)`.
    pub histogram: Vec<(usize, usize, f64)>,
    /// `(cardinality, mean density over those bags, bag count)`.
    pub density_by_cardinality: Vec<(usize, f64, usize)>,
    /// `(tree eccentricity, mean avg_core over those bags, bag count)`.
    pub core_by_eccentricity: Vec<(u32, f64, usize)>,
}

pub fn bag_profiles(g: &Graph, td: &TreeDecomposition, cores: &CoreDecomposition) -> Result<BagProfiles> {
    Ok(BagProfiles::from_stats(&td_stats(g, td, cores)?))
}

impl BagProfiles {
    pub fn from_stats(stats: &TDStats) -> Self {
        let mut by_card: BTreeMap<usize, (usize, f64)> = BTreeMap::new();
        let mut by_ecc: BTreeMap<u32, (usize, f64)> = BTreeMap::new();
        for b in &stats.per_bag {
            let e = by_card.entry(b.cardinality).or_default();
            e.0 += 1;
            e.1 += b.density;
            let e = by_ecc.entry(b.eccentricity).or_default();
            e.0 += 1;
            e.1 += b.avg_core;
        }
        let total = stats.per_bag.len().max(1) as f64;
        let mut running = 0;
        let histogram = by_card
            .iter()
            .map(|(&c, &(count, _))| {
                running += count;
                (c, count, running as f64 / total)
            })
            .collect();
        let density_by_cardinality = by_card
            .iter()
            .map(|(&c, &(count, sum))| (c, sum / count as f64, count))
            .collect();
        let core_by_eccentricity = by_ecc
            .iter()
            .map(|(&e, &(count, sum))| (e, sum / count as f64, count))
            .collect();
        BagProfiles {
            histogram,
            density_by_cardinality,
            core_by_eccentricity,
        }
    }

    pub fn write_histogram_csv<W: Write>(&self, comments: &[String], mut w: W) -> Result<()> {
        write_comments(comments, &mut w)?;
        writeln!(w, "cardinality,count,cumulative_fraction")?;
        for &(c, n, f) in &self.histogram {
            writeln!(w, "{c},{n},{f:.6}")?;
        }
        Ok(())
    }

    pub fn write_density_csv<W: Write>(&self, comments: &[String], mut w: W) -> Result<()> {
        write_comments(comments, &mut w)?;
        writeln!(w, "cardinality,mean_density,bags")?;
        for &(c, d, n) in &self.density_by_cardinality {
            writeln!(w, "{c},{d:.6},{n}")?;
        }
        Ok(())
    }

    pub fn write_core_csv<W: Write>(&self, comments: &[String], mut w: W) -> Result<()> {
        write_comments(comments, &mut w)?;
        writeln!(w, "eccentricity,mean_core,bags")?;
        for &(e, k, n) in &self.core_by_eccentricity {
            writeln!(w, "{e},{k:.6},{n}")?;
        }
        Ok(())
    }
}

fn write_comments<W: Write>(comments: &[String], w: &mut W) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    Ok(())
}

/// Average ranks, 1-based; tied values share the mean of their ranks.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation (Pearson correlation of average ranks).
/// `None` with fewer than two points or when either side is constant.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "spearman needs paired samples");
    if xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let k = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / k, ry.iter().sum::<f64>() / k);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}
