use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use treescope::graph::{giant_component, load_edge_list, load_pace_gr, write_edge_list, write_pace_gr};
use treescope::treedecomp::import_td;
use treescope::{Graph, TreeDecomposition};

/// Header lines stamped on every output file.
pub struct Provenance {
    lines: Vec<String>,
}

impl Provenance {
    pub fn new(command: &str, seed: u64, timestamp: bool) -> Self {
        let args: Vec<String> = std::env::args().skip(1).collect();
        let mut lines = vec![
            format!("treescope {} {command}", env!("CARGO_PKG_VERSION")),
            format!("args: {}", args.join(" ")),
            format!("seed={seed}"),
        ];
        if timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            lines.push(format!("created_unix={secs}"));
        }
        Provenance { lines }
    }

    pub fn with(&self, extra: impl IntoIterator<Item = String>) -> Vec<String> {
        self.lines.iter().cloned().chain(extra).collect()
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }
}

fn is_pace(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gr")
}

/// Loads an edge list, or a PACE `.gr` file by extension, optionally cut
/// down to its giant component.
pub fn read_graph(path: &Path, giant: bool) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let reader = BufReader::new(file);
    let (g, report) = if is_pace(path) {
        load_pace_gr(reader)
    } else {
        load_edge_list(reader)
    }
    .with_context(|| format!("reading {}", path.display()))?;
    if report.build.dropped() > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges",
            report.build.self_loops, report.build.duplicate_edges
        );
    }
    Ok(if giant { giant_component(&g) } else { g })
}

pub fn write_graph(g: &Graph, path: Option<&Path>, comments: &[String]) -> Result<()> {
    let pace = path.is_some_and(is_pace);
    with_output(path, |w| {
        if pace {
            write_pace_gr(g, comments, w)
        } else {
            write_edge_list(g, comments, w)
        }
        .map_err(Into::into)
    })
}

pub fn read_td(path: &Path, g: &Graph) -> Result<TreeDecomposition> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let (td, n) = import_td(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    if n != g.n() {
        bail!("{} describes {n} vertices, the graph has {}", path.display(), g.n());
    }
    Ok(td)
}

pub fn open_lines(path: &Path) -> Result<impl BufRead> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(file))
}

/// Runs `f` on a buffered writer for `path`, or stdout when absent.
pub fn with_output<F>(path: Option<&Path>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// `path` with `suffix` appended to its file name.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}
