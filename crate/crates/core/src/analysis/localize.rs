use std::io::Write;

use super::ppr::NCPPoint;
use crate::treedecomp::TreeDecomposition;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationRow {
    pub size: usize,
    pub conductance: f64,
    /// Bags holding at least one member.
    pub bag_count: usize,
    /// Equal to `size`.
    pub threshold: usize,
    /// `bag_count < size`.
    pub localized: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LocalizationReport {
    pub rows: Vec<LocalizationRow>,
}

impl LocalizationReport {
    pub fn localized_count(&self) -> usize {
        self.rows.iter().filter(|r| r.localized).count()
    }

    pub fn write_csv<W: Write>(&self, comments: &[String], mut w: W) -> Result<()> {
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "size,conductance,bag_count,threshold,localized")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{:.9e},{},{},{}",
                r.size, r.conductance, r.bag_count, r.threshold, r.localized
            )?;
        }
        Ok(())
    }
}

/// Counts, for each cluster, the bags of `td` that contain at least one of
/// its members. Fails if a member lies in no bag.
pub fn localize(td: &TreeDecomposition, points: &[NCPPoint]) -> Result<LocalizationReport> {
    let n = td.vertex_bound();
    let mut bags_holding = vec![0usize; n];
    for bag in &td.bags {
        for &v in bag {
            bags_holding[v as usize] += 1;
        }
    }
    let mut hit = vec![u32::MAX; td.n_bags()];
    let mut mark = vec![usize::MAX; n];
    let mut rows = Vec::with_capacity(points.len());
    for (pi, p) in points.iter().enumerate() {
        for v in p.members.iter() {
            if bags_holding.get(v as usize).copied().unwrap_or(0) == 0 {
                return Err(Error::InvalidVertex(v as usize));
            }
            mark[v as usize] = pi;
        }
        let mut bag_count = 0;
        for (b, bag) in td.bags.iter().enumerate() {
            if hit[b] != pi as u32 && bag.iter().any(|&v| mark[v as usize] == pi) {
                hit[b] = pi as u32;
                bag_count += 1;
            }
        }
        let size = p.members.len();
        rows.push(LocalizationRow {
            size,
            conductance: p.conductance,
            bag_count,
            threshold: size,
            localized: bag_count < size,
        });
    }
    Ok(LocalizationReport { rows })
}
