use std::collections::BTreeMap;
use std::io::BufRead;

use rustc_hash::FxHashMap;

use crate::graph::Graph;
use crate::treedecomp::TreeDecomposition;
use crate::{Error, Result};

/// Node-to-label assignments read from a TSV file.
///
/// One `node<TAB>label` pair per line; the label may be missing or empty.
/// Blank lines and lines starting with `#` are skipped. When a node occurs
/// twice the later line wins.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommunityTable {
    assignment: FxHashMap<String, Option<String>>,
    /// Lines that reassigned an already listed node.
    pub duplicates: usize,
}

impl CommunityTable {
    pub fn from_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut table = CommunityTable::default();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (node, label) = match line.split_once('\t') {
                Some((n, l)) => (n.trim(), l.trim()),
                None => (line.trim(), ""),
            };
            let label = (!label.is_empty()).then(|| label.to_string());
            if table.assignment.insert(node.to_string(), label).is_some() {
                table.duplicates += 1;
            }
        }
        Ok(table)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut table = CommunityTable::default();
        for (node, label) in pairs {
            if table.assignment.insert(node.to_string(), Some(label.to_string())).is_some() {
                table.duplicates += 1;
            }
        }
        table
    }

    /// Distinct labels, sorted.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.assignment.values().flatten().map(String::as_str).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Listed nodes that are not vertices of `g`.
    pub fn unknown_nodes(&self, g: &Graph) -> usize {
        self.assignment.keys().filter(|k| g.vertex(k).is_none()).count()
    }

    /// Vertices of `g` carrying `label`, ascending.
    pub fn members(&self, g: &Graph, label: &str) -> Result<Vec<u32>> {
        let mut known = false;
        let mut out = Vec::new();
        for (node, l) in &self.assignment {
            if l.as_deref() == Some(label) {
                known = true;
                if let Some(v) = g.vertex(node) {
                    out.push(v);
                }
            }
        }
        if !known {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `F(label)`: members present in `g` over `n`.
    pub fn fraction(&self, g: &Graph, label: &str) -> Result<f64> {
        Ok(self.members(g, label)?.len() as f64 / g.n().max(1) as f64)
    }

    /// Member counts per label for vertices of `g`.
    pub fn label_sizes(&self, g: &Graph) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (node, l) in &self.assignment {
            if let (Some(l), Some(_)) = (l, g.vertex(node)) {
                *out.entry(l.clone()).or_insert(0) += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierResult {
    pub label: String,
    pub fraction: f64,
    pub community_size: usize,
    /// Bags of the chosen component, ascending.
    pub bags: Vec<u32>,
    /// Union of those bags, ascending.
    pub union: Vec<u32>,
    pub recall: f64,
    pub precision: f64,
}

/// (bag count, union size, lowest bag id, bags, union)
type Component = (usize, usize, u32, Vec<u32>, Vec<u32>);

/// Frequent-bag classifier.
///
/// A bag is frequent when the fraction of its vertices carrying `label`
/// strictly exceeds `F(label)`. Among the connected components of frequent
/// bags in the decomposition tree, the one with the most bags is taken
/// (then the larger vertex union, then the lowest bag id). Recall and
/// precision compare its vertex union with the community. Both are 0 when
/// no bag is frequent.
pub fn frequent_bag_classifier(
    g: &Graph,
    td: &TreeDecomposition,
    table: &CommunityTable,
    label: &str,
) -> Result<ClassifierResult> {
    let n = g.n();
    if td.vertex_bound() > n {
        return Err(Error::InvalidDecomposition(format!(
            "vertex {} outside a graph of {n} vertices",
            td.vertex_bound() - 1
        )));
    }
    let members = table.members(g, label)?;
    let fraction = members.len() as f64 / n.max(1) as f64;
    let mut in_comm = vec![false; n];
    for &v in &members {
        in_comm[v as usize] = true;
    }
    let frequent: Vec<bool> = td
        .bags
        .iter()
        .map(|b| {
            let hits = b.iter().filter(|&&v| in_comm[v as usize]).count();
            !b.is_empty() && hits as f64 / b.len() as f64 > fraction
        })
        .collect();

    let adj = td.tree_adjacency();
    let mut seen = vec![false; td.n_bags()];
    let mut mark = vec![usize::MAX; n];
    let mut best: Option<Component> = None;
    for start in 0..td.n_bags() {
        if !frequent[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start as u32];
        let mut i = 0;
        while i < comp.len() {
            for &c in &adj[comp[i] as usize] {
                if frequent[c as usize] && !seen[c as usize] {
                    seen[c as usize] = true;
                    comp.push(c);
                }
            }
            i += 1;
        }
        let mut union = Vec::new();
        for &b in &comp {
            for &v in &td.bags[b as usize] {
                if mark[v as usize] != start {
                    mark[v as usize] = start;
                    union.push(v);
                }
            }
        }
        // Components are discovered by increasing lowest bag id, so a
        // later one never wins a full tie.
        let better = best
            .as_ref()
            .is_none_or(|(bc, us, _, _, _)| (comp.len(), union.len()) > (*bc, *us));
        if better {
            comp.sort_unstable();
            union.sort_unstable();
            best = Some((comp.len(), union.len(), start as u32, comp, union));
        }
    }
    let (bags, union) = best.map(|b| (b.3, b.4)).unwrap_or_default();
    let hit = union.iter().filter(|&&v| in_comm[v as usize]).count();
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    Ok(ClassifierResult {
        label: label.to_string(),
        fraction,
        community_size: members.len(),
        recall: ratio(hit, members.len()),
        precision: ratio(hit, union.len()),
        bags,
        union,
    })
}
