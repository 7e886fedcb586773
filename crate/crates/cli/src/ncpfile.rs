use std::io::BufRead;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use treescope::analysis::NCPPoint;
use treescope::{Graph, VertexSet};

const HEADER: &str = "size_bin,best_size,conductance,seed,alpha,epsilon,members_ref";

/// Reads an NCP CSV and the member lines its `members_ref` column points at
/// (`file#line`, the file relative to the CSV's directory).
pub fn read_ncp(path: &Path, g: &Graph) -> Result<Vec<NCPPoint>> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    match rows.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => bail!("{}: expected header {HEADER:?}", path.display()),
    }
    let mut member_files: Vec<(String, Vec<String>)> = Vec::new();
    let mut points = Vec::new();
    for (lineno, line) in rows {
        let at = || format!("{} line {}", path.display(), lineno + 1);
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            bail!("{}: expected 7 fields, found {}", at(), f.len());
        }
        let size: usize = f[1].parse().with_context(at)?;
        let conductance: f64 = f[2].parse().with_context(at)?;
        let seed_vertex = g.vertex(f[3]).ok_or_else(|| anyhow!("{}: unknown seed {:?}", at(), f[3]))?;
        let alpha: f64 = f[4].parse().with_context(at)?;
        let epsilon: f64 = f[5].parse().with_context(at)?;
        let (file, line_no) = f[6]
            .rsplit_once('#')
            .ok_or_else(|| anyhow!("{}: members_ref must look like file#line", at()))?;
        let line_no: usize = line_no.parse().with_context(at)?;
        if !member_files.iter().any(|(name, _)| name == file) {
            let p = dir.join(file);
            let body = std::io::BufReader::new(
                std::fs::File::open(&p).with_context(|| format!("opening {}", p.display()))?,
            );
            let lines = body.lines().collect::<std::io::Result<Vec<_>>>()?;
            member_files.push((file.to_string(), lines));
        }
        let lines = &member_files.iter().find(|(name, _)| name == file).expect("loaded above").1;
        let entry = line_no
            .checked_sub(1)
            .and_then(|i| lines.get(i))
            .ok_or_else(|| anyhow!("{}: {file} has no line {line_no}", at()))?;
        let labels = entry.split_once('\t').map_or("", |(_, rest)| rest);
        let members = labels
            .split_whitespace()
            .map(|l| g.vertex(l).ok_or_else(|| anyhow!("{file} line {line_no}: unknown vertex {l:?}")))
            .collect::<Result<Vec<u32>>>()?;
        if members.len() != size {
            bail!("{}: best_size {size} but {} members listed", at(), members.len());
        }
        points.push(NCPPoint {
            size,
            conductance,
            members: VertexSet::new(members),
            seed_vertex,
            alpha,
            epsilon,
        });
    }
    Ok(points)
}
