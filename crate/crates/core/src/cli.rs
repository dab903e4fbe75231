//! Command-line frontend: `solve`, `gen`, `verify` and `bench`.
//!
//! Solution files list one `v <id> <dist>` line per vertex (1-indexed, `inf`
//! for unreachable vertices), or a `cycle` line followed by a `w` line with
//! the closed witness walk.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DimacsError, SolveError};
use crate::graph::dimacs::{load_dimacs, save_dimacs, to_dimacs};
use crate::graph::generate::{generate, GenSpec};
use crate::remote::ExtractMode;
use crate::solver::{solve, Algorithm, Solution, SolverConfig};
use crate::stats;
use crate::Graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RETRY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "negsssp", version, about = "Shortest paths with negative edge lengths")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 3)]
    pub retries: usize,
    #[arg(long, global = true, default_value = "auto", value_parser = parse_algo)]
    pub algo: Algorithm,
    /// Sampling constant for reset arcs and estimate sets.
    #[arg(long, global = true, default_value_t = 4.0)]
    pub sample_const: f64,
    /// Negative-vertex count at which solvers switch to Johnson.
    #[arg(long, global = true, default_value_t = 8)]
    pub base_k: usize,
    /// Force remote-set extraction mode (`single` or `graded`).
    #[arg(long, global = true, value_parser = parse_mode)]
    pub extract_mode: Option<ExtractMode>,
    /// Remote set size constant.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub cu: f64,
    /// Betweenness sample constant.
    #[arg(long, global = true, default_value_t = 4.0)]
    pub cb: f64,
    /// Skip the betweenness reduction during extraction.
    #[arg(long, global = true)]
    pub no_betweenness: bool,
}

impl GlobalOpts {
    pub fn config(&self, algorithm: Algorithm) -> SolverConfig {
        SolverConfig {
            algorithm,
            seed: self.seed,
            retries: self.retries,
            base_k: self.base_k,
            sample_const: self.sample_const,
            c_u: self.cu,
            c_b: self.cb,
            betweenness: !self.no_betweenness,
            extract_mode: self.extract_mode,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print distances or a negative cycle.
    Solve {
        instance: PathBuf,
        /// Source vertex, 1-indexed.
        #[arg(long, default_value_t = 1)]
        source: usize,
        /// Write the solution here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate random instances.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Number of negative edges.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        planted: bool,
        /// Nonnegative length range `lo:hi`.
        #[arg(long, default_value = "0:20", value_parser = parse_range)]
        nonneg: (i64, i64),
        /// Negative length range `lo:hi`.
        #[arg(long, default_value = "-8:-1", value_parser = parse_range, allow_hyphen_values = true)]
        neg: (i64, i64),
        /// Number of instances; with more than one, `--out-dir` is required.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Single-instance output file (stdout by default).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long, default_value_t = 1)]
        source: usize,
    },
    /// Run algorithms over every `.gr` file in a directory.
    Bench {
        corpus: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', value_parser = parse_algo, default_value = "bellman-ford,auto")]
        algos: Vec<Algorithm>,
        /// Per-run rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<ExtractMode, String> {
    match s {
        "single" => Ok(ExtractMode::Single),
        "graded" => Ok(ExtractMode::Graded),
        _ => Err(format!("unknown extraction mode `{s}` (single, graded)")),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

/// One solver run. Wall time is kept out of the serialized forms so that
/// reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub verdict: String,
    pub hop_relaxations: u64,
    pub dijkstra_pops: u64,
    pub aux_edges: u64,
    pub max_depth: u64,
    pub retries: u64,
    pub estimate_samples: u64,
    #[serde(skip)]
    pub wall_ms: f64,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    fn input(msg: impl ToString) -> Self {
        CliError { code: EXIT_INPUT, msg: msg.to_string() }
    }
}

impl From<DimacsError> for CliError {
    fn from(e: DimacsError) -> Self {
        CliError::input(e)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::RetryBudgetExhausted { .. } => EXIT_RETRY,
            SolveError::Graph(_) => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        CliError { code, msg: e.to_string() }
    }
}

/// Runs one solver and records its counters.
pub fn run_instance(
    name: &str,
    g: &Graph,
    source: usize,
    cfg: &SolverConfig,
) -> Result<(Solution, RunReport), SolveError> {
    let start = Instant::now();
    let (res, c) = stats::measure(|| solve(g, source, cfg));
    let sol = res?;
    let report = RunReport {
        instance: name.to_string(),
        algorithm: cfg.algorithm.name().to_string(),
        seed: cfg.seed,
        verdict: if sol.is_cycle() { "cycle" } else { "distances" }.to_string(),
        hop_relaxations: c.hop_relaxations,
        dijkstra_pops: c.dijkstra_pops,
        aux_edges: c.aux_edges,
        max_depth: c.max_depth,
        retries: c.retries,
        estimate_samples: c.estimate_samples,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((sol, report))
}

pub fn format_solution(sol: &Solution) -> String {
    let mut s = String::new();
    match sol {
        Solution::Distances { dist, .. } => {
            for (v, d) in dist.iter().enumerate() {
                if d.is_finite() {
                    writeln!(s, "v {} {}", v + 1, d).unwrap();
                } else {
                    writeln!(s, "v {} inf", v + 1).unwrap();
                }
            }
        }
        Solution::Cycle(c) => {
            s.push_str("cycle\nw");
            for v in &c.vertices {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
    }
    s
}

/// A parsed solution file.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionFile {
    Distances(Vec<f64>),
    /// Closed walk, 0-indexed.
    Cycle(Vec<usize>),
}

pub fn parse_solution(text: &str, n: usize) -> Result<SolutionFile, String> {
    let mut dist = vec![None; n];
    let mut cycle = false;
    let mut walk = None;
    for (i, line) in text.lines().enumerate() {
        let err = |m: &str| format!("line {}: {m}", i + 1);
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("cycle") => cycle = true,
            Some("w") => {
                let vs = tok
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                        _ => Err(err("bad vertex in witness")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                walk = Some(vs);
            }
            Some("v") => {
                let v = match tok.next().and_then(|t| t.parse::<usize>().ok()) {
                    Some(v) if (1..=n).contains(&v) => v - 1,
                    _ => return Err(err("bad vertex id")),
                };
                let d = match tok.next() {
                    Some("inf") => f64::INFINITY,
                    Some(t) => t.parse::<f64>().map_err(|_| err("bad distance"))?,
                    None => return Err(err("missing distance")),
                };
                if d.is_nan() || d == f64::NEG_INFINITY {
                    return Err(err("distance must be a number or inf"));
                }
                if dist[v].replace(d).is_some() {
                    return Err(err("vertex listed twice"));
                }
            }
            Some(t) => return Err(err(&format!("unknown line type `{t}`"))),
        }
    }
    if cycle {
        return walk.map(SolutionFile::Cycle).ok_or_else(|| "cycle without a `w` line".into());
    }
    dist.into_iter()
        .enumerate()
        .map(|(v, d)| d.ok_or_else(|| format!("no distance for vertex {}", v + 1)))
        .collect::<Result<Vec<_>, _>>()
        .map(SolutionFile::Distances)
}

/// Checks a solution. Distances must satisfy every edge's triangle
/// inequality, put the source at 0, and be realized by a tree of tight edges
/// from the source. A cycle must be a closed walk along edges with negative
/// total length (the shortest parallel edge is taken between consecutive
/// vertices).
pub fn verify_solution(g: &Graph, source: usize, sol: &SolutionFile) -> Result<(), String> {
    match sol {
        SolutionFile::Cycle(walk) => {
            if walk.len() < 2 || walk.first() != walk.last() {
                return Err("witness is not a closed walk".into());
            }
            let mut total = 0.0;
            for w in walk.windows(2) {
                let best = g
                    .out_edges(w[0])
                    .iter()
                    .map(|&e| g.edge(e))
                    .filter(|e| e.head == w[1])
                    .map(|e| e.len)
                    .fold(f64::INFINITY, f64::min);
                if best.is_infinite() {
                    return Err(format!("no edge {} -> {}", w[0] + 1, w[1] + 1));
                }
                total += best;
            }
            if total < 0.0 {
                Ok(())
            } else {
                Err(format!("witness has length {total}, not negative"))
            }
        }
        SolutionFile::Distances(d) => {
            if d[source] != 0.0 {
                return Err(format!("source distance is {}, expected 0", d[source]));
            }
            for (i, e) in g.edges().iter().enumerate() {
                if d[e.tail].is_finite() && d[e.head] > d[e.tail] + e.len {
                    return Err(format!(
                        "edge {i} ({} -> {}, length {}) violates d({}) = {} <= {} + {}",
                        e.tail + 1,
                        e.head + 1,
                        e.len,
                        e.head + 1,
                        d[e.head],
                        d[e.tail],
                        e.len
                    ));
                }
            }
            // Parent walks: grow the tree of tight edges from the source.
            let mut seen = vec![false; g.n()];
            seen[source] = true;
            let mut stack = vec![source];
            while let Some(u) = stack.pop() {
                for &e in g.out_edges(u) {
                    let edge = g.edge(e);
                    if !seen[edge.head] && d[u] + edge.len == d[edge.head] {
                        seen[edge.head] = true;
                        stack.push(edge.head);
                    }
                }
            }
            match (0..g.n()).find(|&v| d[v].is_finite() && !seen[v]) {
                Some(v) => Err(format!("distance of vertex {} is not realized by any walk", v + 1)),
                None => Ok(()),
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Solve { instance, source, output } => {
            let graph = load_dimacs(instance)?;
            let src = check_source(*source, &graph)?;
            let cfg = g.config(g.algo);
            let (sol, report) = run_instance(&display_name(instance), &graph, src, &cfg)?;
            let text = format_solution(&sol);
            match output {
                Some(p) => fs::write(p, text).map_err(CliError::input)?,
                None => print!("{text}"),
            }
            if g.json {
                eprintln!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                eprintln!(
                    "{}: {} via {} ({} relaxations, {:.1} ms)",
                    report.instance, report.verdict, report.algorithm, report.hop_relaxations, report.wall_ms
                );
            }
            Ok(())
        }
        Command::Gen { n, m, k, planted, nonneg, neg, count, out_dir, output } => {
            let spec = |seed| {
                GenSpec::new(*n, *m, *k, seed).planted(*planted).weights(*nonneg, *neg)
            };
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(CliError::input)?;
                    for i in 0..*count {
                        let seed = g.seed + i;
                        let graph = generate(&spec(seed)).map_err(CliError::input)?;
                        save_dimacs(&graph, dir.join(format!("inst-{seed:04}.gr")))?;
                    }
                }
                None if *count > 1 => return Err(CliError::input("--count > 1 needs --out-dir")),
                None => {
                    let graph = generate(&spec(g.seed)).map_err(CliError::input)?;
                    match output {
                        Some(p) => save_dimacs(&graph, p)?,
                        None => print!("{}", to_dimacs(&graph)),
                    }
                }
            }
            Ok(())
        }
        Command::Verify { instance, solution, source } => {
            let graph = load_dimacs(instance)?;
            let src = check_source(*source, &graph)?;
            let text = fs::read_to_string(solution).map_err(CliError::input)?;
            let sol = parse_solution(&text, graph.n()).map_err(CliError::input)?;
            match verify_solution(&graph, src, &sol) {
                Ok(()) => {
                    println!("ok");
                    Ok(())
                }
                Err(msg) => Err(CliError { code: EXIT_INTERNAL, msg: format!("invalid solution: {msg}") }),
            }
        }
        Command::Bench { corpus, algos, csv } => {
            let reports = bench(corpus, algos, g)?;
            if g.json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            } else {
                print!("{}", summary_table(&reports));
            }
            if let Some(p) = csv {
                let mut w = csv::Writer::from_path(p).map_err(CliError::input)?;
                for r in &reports {
                    w.serialize(r).map_err(CliError::input)?;
                }
                w.flush().map_err(CliError::input)?;
            }
            Ok(())
        }
    }
}

fn check_source(source: usize, g: &Graph) -> Result<usize, CliError> {
    if source == 0 || source > g.n() {
        return Err(CliError::input(format!("source {source} outside 1..={}", g.n())));
    }
    Ok(source - 1)
}

fn display_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Every (instance, algorithm) pair of a corpus, from vertex 1, in instance
/// order then algorithm order.
pub fn bench(corpus: &Path, algos: &[Algorithm], g: &GlobalOpts) -> Result<Vec<RunReport>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus)
        .map_err(CliError::input)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gr"))
        .collect();
    files.sort();
    let graphs = files
        .iter()
        .map(|p| Ok((display_name(p), load_dimacs(p)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let jobs: Vec<(usize, Algorithm)> =
        (0..graphs.len()).flat_map(|i| algos.iter().map(move |&a| (i, a))).collect();
    jobs.par_iter()
        .map(|&(i, a)| {
            let (name, graph) = &graphs[i];
            run_instance(name, graph, 0, &g.config(a)).map(|(_, r)| r).map_err(CliError::from)
        })
        .collect()
}

/// Per-algorithm totals.
pub fn summary_table(reports: &[RunReport]) -> String {
    let mut order: Vec<&str> = Vec::new();
    for r in reports {
        if !order.contains(&r.algorithm.as_str()) {
            order.push(&r.algorithm);
        }
    }
    let mut s = format!(
        "{:<20} {:>5} {:>6} {:>16} {:>14} {:>12} {:>5} {:>7} {:>10}\n",
        "algorithm", "runs", "cycles", "hop-relaxations", "dijkstra-pops", "aux-edges", "depth", "retries", "wall-ms"
    );
    for a in order {
        let rs: Vec<&RunReport> = reports.iter().filter(|r| r.algorithm == a).collect();
        let sum = |f: fn(&RunReport) -> u64| rs.iter().map(|r| f(r)).sum::<u64>();
        writeln!(
            s,
            "{:<20} {:>5} {:>6} {:>16} {:>14} {:>12} {:>5} {:>7} {:>10.1}",
            a,
            rs.len(),
            rs.iter().filter(|r| r.verdict == "cycle").count(),
            sum(|r| r.hop_relaxations),
            sum(|r| r.dijkstra_pops),
            sum(|r| r.aux_edges),
            rs.iter().map(|r| r.max_depth).max().unwrap_or(0),
            sum(|r| r.retries),
            rs.iter().map(|r| r.wall_ms).sum::<f64>(),
        )
        .unwrap();
    }
    s
}
