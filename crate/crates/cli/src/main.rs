mod files;
mod ncpfile;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use treescope::analysis::{
    frequent_bag_classifier, localize, write_ncp_csv, write_ncp_members, BagProfiles, CommunityTable,
    NcpParams, DEFAULT_ALPHAS, DEFAULT_EPSILONS, DEFAULT_NCP_SEED_COUNT,
};
use treescope::generators::{
    gen_binary_tree, gen_chung_lu, gen_clique, gen_cycle, gen_er, gen_grid, gen_grid_subdivision,
    DEFAULT_CHUNG_LU_AVG_DEGREE,
};
use treescope::graph::{giant_component, k_core};
use treescope::hyperbolicity::{delta_exact_capped, fmt_half, verify_theorem3, DELTA_DEFAULT_CAP};
use treescope::ordering::order;
use treescope::rng::DEFAULT_SEED;
use treescope::treedecomp::{export_td, gavril_td, td_stats, validate_td};
use treescope::{EliminationOrdering, Heuristic};

use files::{open_lines, read_graph, read_td, sibling, with_output, write_graph, Provenance};

#[derive(Parser)]
#[command(name = "treescope", version, about = "Tree decompositions of sparse graphs and their structural analytics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random stage.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for ncp and hyperbolicity (default: all cores).
    #[arg(long, global = true, env = "TREESCOPE_THREADS")]
    threads: Option<usize>,
    /// Leave the creation time out of output headers.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

/// Graph input shared by most subcommands.
#[derive(Args)]
struct GraphIn {
    /// Edge list, or PACE .gr by extension.
    graph: PathBuf,
    /// Restrict to the largest connected component.
    #[arg(long)]
    giant: bool,
}

impl GraphIn {
    fn load(&self) -> Result<treescope::Graph> {
        read_graph(&self.graph, self.giant)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Er,
    ChungLu,
    Grid,
    Cycle,
    Clique,
    BinaryTree,
    GridSubdivision,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic or toy graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count (er, chung-lu, cycle, clique) or grid side (grid-subdivision).
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for er.
        #[arg(long)]
        p: Option<f64>,
        /// Target average degree for er (instead of --p) and chung-lu.
        #[arg(long)]
        avg_degree: Option<f64>,
        /// Power-law exponent for chung-lu.
        #[arg(long, default_value_t = 2.5)]
        gamma: f64,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        depth: Option<u32>,
        /// Subdivision count for grid-subdivision.
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        giant: bool,
        /// Output (.gr for PACE); stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute an elimination ordering.
    Order {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long, default_value = "amd")]
        heuristic: Heuristic,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a tree decomposition (PACE .td).
    Decompose {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long, default_value = "amd", conflicts_with = "ordering")]
        heuristic: Heuristic,
        /// Use this ordering file instead of running a heuristic.
        #[arg(long)]
        ordering: Option<PathBuf>,
        /// Also write the tree as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a decomposition against the graph.
    Validate {
        #[command(flatten)]
        input: GraphIn,
        td: PathBuf,
    },
    /// Per-bag statistics and the bag profile series.
    Stats {
        #[command(flatten)]
        input: GraphIn,
        td: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write <prefix>.hist.csv, <prefix>.density.csv and <prefix>.core.csv.
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
    /// Core number of every vertex.
    Kcore {
        #[command(flatten)]
        input: GraphIn,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Network community profile from PPR sweeps.
    Ncp {
        #[command(flatten)]
        input: GraphIn,
        /// Number of seed vertices.
        #[arg(long, default_value_t = DEFAULT_NCP_SEED_COUNT)]
        seeds: usize,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        epsilon: Option<Vec<f64>>,
        /// NCP CSV; members go to <output>.members.tsv.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Count the bags touched by each NCP cluster.
    Localize {
        #[command(flatten)]
        input: GraphIn,
        td: PathBuf,
        /// NCP CSV written by `ncp`.
        ncp: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Frequent-bag classifier against labelled communities.
    Classify {
        #[command(flatten)]
        input: GraphIn,
        td: PathBuf,
        /// TSV of node<TAB>label.
        communities: PathBuf,
        /// Labels to score (default: all).
        #[arg(long)]
        label: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact four-point hyperbolicity.
    Hyperbolicity {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long, default_value_t = DELTA_DEFAULT_CAP)]
        cap: usize,
        /// Ignore the vertex cap.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check delta <= tl <= (tw+1)·nu on the k-subdivided n x n grid.
    #[command(name = "verify-thm3")]
    VerifyThm3 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Heuristics to decompose with (default: all).
        #[arg(long, value_delimiter = ',')]
        heuristic: Vec<Heuristic>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn name_of(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Order { .. } => "order",
        Command::Decompose { .. } => "decompose",
        Command::Validate { .. } => "validate",
        Command::Stats { .. } => "stats",
        Command::Kcore { .. } => "kcore",
        Command::Ncp { .. } => "ncp",
        Command::Localize { .. } => "localize",
        Command::Classify { .. } => "classify",
        Command::Hyperbolicity { .. } => "hyperbolicity",
        Command::VerifyThm3 { .. } => "verify-thm3",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let seed = cli.global.seed;
    let prov = Provenance::new(name_of(&cli.command), seed, !cli.global.no_timestamp);
    match cli.command {
        Command::Gen {
            family,
            n,
            p,
            avg_degree,
            gamma,
            rows,
            cols,
            depth,
            k,
            giant,
            output,
        } => {
            let need = |x: Option<usize>, flag: &str| x.with_context(|| format!("--{flag} is required for this family"));
            let g = match family {
                Family::Er => {
                    let n = need(n, "n")?;
                    let p = match (p, avg_degree) {
                        (Some(p), None) => p,
                        (None, Some(d)) => d / (n.max(2) - 1) as f64,
                        _ => bail!("er needs exactly one of --p and --avg-degree"),
                    };
                    gen_er(n, p, seed)
                }
                Family::ChungLu => gen_chung_lu(
                    need(n, "n")?,
                    gamma,
                    avg_degree.unwrap_or(DEFAULT_CHUNG_LU_AVG_DEGREE),
                    seed,
                ),
                Family::Grid => gen_grid(need(rows, "rows")?, need(cols, "cols")?),
                Family::Cycle => gen_cycle(need(n, "n")?),
                Family::Clique => gen_clique(need(n, "n")?),
                Family::BinaryTree => gen_binary_tree(depth.context("--depth is required for binary-tree")?),
                Family::GridSubdivision => gen_grid_subdivision(need(n, "n")?, k),
            };
            let g = if giant { giant_component(&g) } else { g };
            eprintln!("n={} m={}", g.n(), g.m());
            write_graph(&g, output.as_deref(), prov.lines())?;
        }
        Command::Order { input, heuristic, output } => {
            let g = input.load()?;
            let ord = order(&g, heuristic, seed);
            let comments = prov.with([format!("heuristic={heuristic} tiebreak={}", ord.tiebreak.name())]);
            with_output(output.as_deref(), |w| Ok(ord.write(&g, &comments, w)?))?;
        }
        Command::Decompose {
            input,
            heuristic,
            ordering,
            dot,
            output,
        } => {
            let g = input.load()?;
            let ord = match &ordering {
                Some(path) => EliminationOrdering::read(&g, open_lines(path)?)
                    .with_context(|| format!("reading {}", path.display()))?,
                None => order(&g, heuristic, seed),
            };
            let td = gavril_td(&g, &ord);
            eprintln!("bags={} width={} max_cardinality={}", td.n_bags(), td.width(), td.max_cardinality());
            let comments = prov.with([format!("source={} tiebreak={}", td.source, ord.tiebreak.name())]);
            with_output(output.as_deref(), |w| Ok(export_td(&td, g.n(), &comments, w)?))?;
            if let Some(path) = dot {
                std::fs::write(&path, td.to_dot(g.labels())).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Validate { input, td } => {
            let g = input.load()?;
            let td = read_td(&td, &g)?;
            let report = validate_td(&g, &td);
            if report.is_valid() {
                println!("VALID");
            } else {
                println!("INVALID");
                for v in &report.violations {
                    println!("{v}");
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Stats {
            input,
            td,
            output,
            profiles,
        } => {
            let g = input.load()?;
            let td = read_td(&td, &g)?;
            let stats = td_stats(&g, &td, &k_core(&g))?;
            eprintln!(
                "bags={} width={} median_width={} median_density={:.4} td_diameter={}",
                stats.n_bags, stats.width_max, stats.width_median, stats.density_median, stats.td_diameter
            );
            with_output(output.as_deref(), |w| Ok(stats.write_csv(prov.lines(), w)?))?;
            if let Some(prefix) = profiles {
                let p = BagProfiles::from_stats(&stats);
                with_output(Some(&sibling(&prefix, ".hist.csv")), |w| Ok(p.write_histogram_csv(prov.lines(), w)?))?;
                with_output(Some(&sibling(&prefix, ".density.csv")), |w| Ok(p.write_density_csv(prov.lines(), w)?))?;
                with_output(Some(&sibling(&prefix, ".core.csv")), |w| Ok(p.write_core_csv(prov.lines(), w)?))?;
            }
        }
        Command::Kcore { input, output } => {
            let g = input.load()?;
            let cores = k_core(&g);
            eprintln!("k_min={} k_max={}", cores.k_min, cores.k_max);
            with_output(output.as_deref(), |w| {
                for c in prov.lines() {
                    writeln!(w, "# {c}")?;
                }
                writeln!(w, "vertex,core")?;
                for v in 0..g.n() as u32 {
                    writeln!(w, "{},{}", g.label(v), cores.core_of(v))?;
                }
                Ok(())
            })?;
        }
        Command::Ncp {
            input,
            seeds,
            alpha,
            epsilon,
            output,
        } => {
            let g = input.load()?;
            let params = NcpParams {
                alphas: alpha.unwrap_or_else(|| DEFAULT_ALPHAS.to_vec()),
                epsilons: epsilon.unwrap_or_else(|| DEFAULT_EPSILONS.to_vec()),
                seed_count: seeds,
            };
            let points = params.run(&g, seed)?;
            let members = sibling(&output, ".members.tsv");
            let members_name = members.file_name().expect("file name").to_string_lossy().into_owned();
            let comments = prov.with([format!(
                "alphas={:?} epsilons={:?} seeds={}",
                params.alphas, params.epsilons, params.seed_count
            )]);
            with_output(Some(&output), |w| Ok(write_ncp_csv(&g, &points, &members_name, &comments, w)?))?;
            with_output(Some(&members), |w| Ok(write_ncp_members(&g, &points, w)?))?;
            eprintln!("points={}", points.len());
        }
        Command::Localize {
            input,
            td,
            ncp: ncp_path,
            output,
        } => {
            let g = input.load()?;
            let td = read_td(&td, &g)?;
            let points = ncpfile::read_ncp(&ncp_path, &g)?;
            let report = localize(&td, &points)?;
            eprintln!("clusters={} localized={}", report.rows.len(), report.localized_count());
            with_output(output.as_deref(), |w| Ok(report.write_csv(prov.lines(), w)?))?;
        }
        Command::Classify {
            input,
            td,
            communities,
            label,
            output,
        } => {
            let g = input.load()?;
            let td = read_td(&td, &g)?;
            let table = CommunityTable::from_tsv(open_lines(&communities)?)
                .with_context(|| format!("reading {}", communities.display()))?;
            let unknown = table.unknown_nodes(&g);
            if unknown > 0 || table.duplicates > 0 {
                eprintln!("note: {unknown} listed nodes not in the graph, {} repeated nodes", table.duplicates);
            }
            let labels: Vec<String> = if label.is_empty() {
                table.labels().into_iter().map(String::from).collect()
            } else {
                label
            };
            let results = labels
                .iter()
                .map(|l| frequent_bag_classifier(&g, &td, &table, l))
                .collect::<treescope::Result<Vec<_>>>()?;
            with_output(output.as_deref(), |w| {
                for c in prov.lines() {
                    writeln!(w, "# {c}")?;
                }
                writeln!(w, "label,fraction,community_size,frequent_bags,union_size,recall,precision")?;
                for r in &results {
                    writeln!(
                        w,
                        "{},{:.6},{},{},{},{:.6},{:.6}",
                        r.label,
                        r.fraction,
                        r.community_size,
                        r.bags.len(),
                        r.union.len(),
                        r.recall,
                        r.precision
                    )?;
                }
                Ok(())
            })?;
        }
        Command::Hyperbolicity { input, cap, force, csv } => {
            let g = input.load()?;
            let m = delta_exact_capped(&g, (!force).then_some(cap))?;
            let witness = m
                .witness
                .map(|q| q.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            println!("n={}", m.n);
            println!("diameter={}", m.diameter);
            println!("delta={}", fmt_half(m.twice_delta));
            println!("witness={witness}");
            if let Some(path) = csv {
                with_output(Some(&path), |w| {
                    for c in prov.lines() {
                        writeln!(w, "# {c}")?;
                    }
                    writeln!(w, "n,diameter,delta,witness")?;
                    writeln!(w, "{},{},{},{}", m.n, m.diameter, fmt_half(m.twice_delta), witness)?;
                    Ok(())
                })?;
            }
        }
        Command::VerifyThm3 { n, k, heuristic } => {
            let hs = if heuristic.is_empty() { Heuristic::ALL.to_vec() } else { heuristic };
            let report = verify_theorem3(n, k, &hs, seed)?;
            print!("{}", report.to_key_values());
            if report.chain_holds() {
                println!("chain holds");
            } else {
                println!("chain fails");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
