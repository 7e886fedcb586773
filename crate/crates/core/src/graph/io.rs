use std::io::{BufRead, Write};

use rustc_hash::FxHashMap;

use super::{BuildReport, Graph};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub build: BuildReport,
    pub lines: usize,
}

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('%')
}

/// Reads a whitespace-delimited edge list (`u v` per line, `#` / `%`
/// comments). Tokens after the second on a line are ignored.
///
/// When every label is an integer, internal indices follow numeric label
/// order; otherwise they follow first appearance. Either way the numbering
/// is a function of the file contents alone.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadReport)> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: FxHashMap<String, u32> = FxHashMap::default();
    let mut edges = Vec::new();
    let mut lines = 0;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        lines += 1;
        let line = line.trim();
        if is_comment(line) {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::parse(lineno + 1, format!("expected two vertex tokens, got {line:?}")));
        };
        let mut intern = |tok: &str| -> u32 {
            if let Some(&id) = index.get(tok) {
                return id;
            }
            let id = labels.len() as u32;
            labels.push(tok.to_string());
            index.insert(tok.to_string(), id);
            id
        };
        let u = intern(a);
        let v = intern(b);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse::<i64>().ok()).collect();
    if let Some(values) = numeric {
        let mut order: Vec<u32> = (0..labels.len() as u32).collect();
        order.sort_by_key(|&i| values[i as usize]);
        let mut remap = vec![0u32; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        labels = order.iter().map(|&i| labels[i as usize].clone()).collect();
        for e in &mut edges {
            *e = (remap[e.0 as usize], remap[e.1 as usize]);
        }
    }

    let (g, build) = Graph::from_labeled_edges(labels, edges);
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((g, LoadReport { build, lines }))
}

/// Writes `comments` as `#` lines followed by one `u v` label pair per edge.
pub fn write_edge_list<W: Write>(g: &Graph, comments: &[String], mut w: W) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", g.label(u), g.label(v))?;
    }
    Ok(())
}

/// Reads the PACE `.gr` format: `p tw <n> <m>` header, 1-based edge lines,
/// `c` comments. Vertex `i` gets internal index `i-1` and label `"i"`.
pub fn load_pace_gr<R: BufRead>(reader: R) -> Result<(Graph, LoadReport)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines = 0;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        lines += 1;
        let line = line.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate header"));
            }
            if tokens.len() != 4 || tokens[1] != "tw" {
                return Err(Error::parse(lineno, "expected `p tw <n> <m>`"));
            }
            let n = tokens[2].parse().map_err(|_| Error::parse(lineno, "bad vertex count"))?;
            let m = tokens[3].parse().map_err(|_| Error::parse(lineno, "bad edge count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(lineno, "edge before `p tw` header"));
        };
        if tokens.len() < 2 {
            return Err(Error::parse(lineno, "expected two vertex ids"));
        }
        let endpoint = |tok: &str| -> Result<u32> {
            let id: usize = tok.parse().map_err(|_| Error::parse(lineno, format!("bad vertex id {tok:?}")))?;
            if id == 0 || id > n {
                return Err(Error::parse(lineno, format!("vertex id {id} outside 1..={n}")));
            }
            Ok(id as u32 - 1)
        };
        let u = endpoint(tokens[0])?;
        let v = endpoint(tokens[1])?;
        edges.push((u, v));
    }
    let Some((n, _)) = header else {
        return Err(Error::parse(lines.max(1), "missing `p tw` header"));
    };
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let (g, build) = Graph::from_labeled_edges(labels, edges);
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((g, LoadReport { build, lines }))
}

/// Writes the PACE `.gr` format using internal indices (1-based).
pub fn write_pace_gr<W: Write>(g: &Graph, comments: &[String], mut w: W) -> Result<()> {
    for c in comments {
        writeln!(w, "c {c}")?;
    }
    writeln!(w, "p tw {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}
