use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn treescope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treescope"))
        .args(args)
        .env_remove("TREESCOPE_THREADS")
        .output()
        .expect("spawn treescope")
}

fn ok(args: &[&str]) -> Output {
    let out = treescope(args);
    assert!(
        out.status.success(),
        "treescope {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Body lines with `#` comments removed.
fn body(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("c "))
        .map(str::to_string)
        .collect()
}

fn max_bag(td: &Path) -> usize {
    std::fs::read_to_string(td)
        .unwrap()
        .lines()
        .find_map(|l| l.strip_prefix("s td "))
        .map(|rest| rest.split_whitespace().nth(1).unwrap().parse().unwrap())
        .expect("solution line")
}

#[test]
fn grid_lexm_decomposes_and_validates() {
    let dir = TempDir::new().unwrap();
    let (g, td) = (p(&dir, "grid.txt"), p(&dir, "grid.td"));
    ok(&["gen", "--family", "grid", "--rows", "10", "--cols", "10", "-o", s(&g)]);
    ok(&["decompose", s(&g), "--heuristic", "lexm", "-o", s(&td)]);
    let card = max_bag(&td);
    assert!((10..=12).contains(&card), "max bag {card}");
    let v = ok(&["validate", s(&g), s(&td)]);
    assert_eq!(stdout(&v).trim(), "VALID");
}

#[test]
fn invalid_decomposition_exits_one() {
    let dir = TempDir::new().unwrap();
    let (g, td) = (p(&dir, "c.txt"), p(&dir, "bad.td"));
    ok(&["gen", "--family", "cycle", "--n", "5", "-o", s(&g)]);
    std::fs::write(&td, "s td 2 3 5\nb 1 1 2 3\nb 2 3 4 5\n1 2\n").unwrap();
    let out = treescope(&["validate", s(&g), s(&td)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("INVALID"));
}

#[test]
fn verify_thm3_small_grid() {
    let out = ok(&["verify-thm3", "--n", "3", "--k", "0"]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "tw=3"), "{text}");
    assert!(text.lines().any(|l| l == "nu=4"), "{text}");
    assert_eq!(text.lines().last(), Some("chain holds"));
}

#[test]
fn reruns_are_byte_identical_without_timestamp() {
    let dir = TempDir::new().unwrap();
    let g = p(&dir, "er.txt");
    let mut seen = Vec::new();
    for _ in 0..2 {
        ok(&["--no-timestamp", "--seed", "7", "gen", "--family", "er", "--n", "300", "--avg-degree", "3", "--giant", "-o", s(&g)]);
        ok(&["--no-timestamp", "--seed", "7", "decompose", s(&g), "--heuristic", "mindeg", "-o", s(&p(&dir, "er.td"))]);
        seen.push((std::fs::read(&g).unwrap(), std::fs::read(p(&dir, "er.td")).unwrap()));
    }
    assert_eq!(seen[0], seen[1]);
    let other = p(&dir, "other.txt");
    ok(&["--no-timestamp", "--seed", "8", "gen", "--family", "er", "--n", "300", "--avg-degree", "3", "-o", s(&other)]);
    assert_ne!(body(&other), body(&g));
}

#[test]
fn ncp_localize_round_trip_is_thread_independent() {
    let dir = TempDir::new().unwrap();
    let (g, td) = (p(&dir, "g.txt"), p(&dir, "g.td"));
    ok(&["gen", "--family", "er", "--n", "400", "--avg-degree", "3", "--giant", "-o", s(&g)]);
    ok(&["decompose", s(&g), "--heuristic", "amd", "-o", s(&td)]);
    let mut outs = Vec::new();
    for threads in ["1", "4"] {
        let csv = p(&dir, &format!("ncp{threads}.csv"));
        ok(&[
            "--no-timestamp", "--threads", threads, "ncp", s(&g), "--seeds", "40", "--alpha", "0.1",
            "--epsilon", "1e-3,1e-4", "-o", s(&csv),
        ]);
        let members = p(&dir, &format!("ncp{threads}.csv.members.tsv"));
        assert!(members.exists());
        // member refs name each run's own file, so compare with that column dropped
        let rows: Vec<String> = body(&csv).iter().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect();
        outs.push((rows, body(&members)));
    }
    assert_eq!(outs[0], outs[1]);
    assert!(outs[0].0.len() > 1, "header plus at least one point");

    let loc = p(&dir, "loc.csv");
    ok(&["localize", s(&g), s(&td), s(&p(&dir, "ncp1.csv")), "-o", s(&loc)]);
    let rows = body(&loc);
    assert_eq!(rows[0], "size,conductance,bag_count,threshold,localized");
    assert_eq!(rows.len(), outs[0].0.len());
    for r in &rows[1..] {
        let f: Vec<&str> = r.split(',').collect();
        let bags: usize = f[2].parse().unwrap();
        assert!(bags >= 1);
        assert!(f[4] == "true" || f[4] == "false");
    }
}

#[test]
fn classify_reports_planted_clique() {
    let dir = TempDir::new().unwrap();
    let (g, td, tsv) = (p(&dir, "g.txt"), p(&dir, "g.td"), p(&dir, "c.tsv"));
    // two 6-cliques joined by a path
    let mut edges = String::new();
    for base in [0, 10] {
        for a in 0..6 {
            for b in a + 1..6 {
                edges.push_str(&format!("{} {}\n", base + a, base + b));
            }
        }
    }
    for v in 5..10 {
        edges.push_str(&format!("{v} {}\n", v + 1));
    }
    std::fs::write(&g, edges).unwrap();
    let mut labels = String::from("# node\tlabel\n");
    for v in 0..16 {
        labels.push_str(&format!("{v}\t{}\n", if v < 6 { "left" } else { "other" }));
    }
    std::fs::write(&tsv, labels).unwrap();
    ok(&["decompose", s(&g), "--heuristic", "mindeg", "-o", s(&td)]);
    let out = ok(&["classify", s(&g), s(&td), s(&tsv), "--label", "left"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "label,fraction,community_size,frequent_bags,union_size,recall,precision");
    let f: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(f[0], "left");
    assert_eq!(f[2], "6");
    assert_eq!(f[5].parse::<f64>().unwrap(), 1.0);
    assert!(f[6].parse::<f64>().unwrap() >= 0.8);
}

#[test]
fn stats_and_kcore_write_csvs() {
    let dir = TempDir::new().unwrap();
    let (g, td) = (p(&dir, "g.txt"), p(&dir, "g.td"));
    ok(&["gen", "--family", "binary-tree", "--depth", "4", "-o", s(&g)]);
    ok(&["decompose", s(&g), "--heuristic", "minfill", "-o", s(&td)]);
    let prefix = p(&dir, "prof");
    ok(&["stats", s(&g), s(&td), "-o", s(&p(&dir, "stats.csv")), "--profiles", s(&prefix)]);
    for suffix in [".hist.csv", ".density.csv", ".core.csv"] {
        let f = PathBuf::from(format!("{}{suffix}", prefix.display()));
        assert!(body(&f).len() > 1, "{suffix}");
    }
    let k = ok(&["kcore", s(&g)]);
    let text = stdout(&k);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "vertex,core");
    assert_eq!(rows.len(), 32);
    assert!(rows[1..].iter().all(|r| r.ends_with(",1")));
}

#[test]
fn hyperbolicity_of_a_cycle() {
    let dir = TempDir::new().unwrap();
    let g = p(&dir, "c8.txt");
    ok(&["gen", "--family", "cycle", "--n", "8", "-o", s(&g)]);
    let text = stdout(&ok(&["hyperbolicity", s(&g)]));
    assert!(text.lines().any(|l| l == "delta=2"), "{text}");
    assert!(text.lines().any(|l| l == "diameter=4"), "{text}");
}

#[test]
fn errors_and_usage_have_distinct_exit_codes() {
    let missing = treescope(&["validate", "/nonexistent/g.txt", "/nonexistent/g.td"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    let usage = treescope(&["decompose"]);
    assert_eq!(usage.status.code(), Some(2));
    let bad = treescope(&["order", "x.txt", "--heuristic", "nosuch"]);
    assert_eq!(bad.status.code(), Some(2));
}
