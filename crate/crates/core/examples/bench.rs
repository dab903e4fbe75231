//! Generates a small corpus in a temporary directory and benchmarks a few
//! algorithms on it, like `negsssp gen` followed by `negsssp bench`.
//!
//! cargo run --release --example bench

use negsssp::cli::{bench, summary_table, Cli, Command};
use negsssp::graph::dimacs::save_dimacs;
use negsssp::graph::generate::{generate, GenSpec};
use clap::Parser;

fn main() {
    let dir = std::env::temp_dir().join("negsssp-bench-example");
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..4 {
        let g = generate(&GenSpec::new(400, 2400, 120, seed).weights((0, 50), (-5, -1))).unwrap();
        save_dimacs(&g, dir.join(format!("inst-{seed:04}.gr"))).unwrap();
    }
    let cli = Cli::parse_from(["negsssp", "bench", dir.to_str().unwrap(), "--algos", "bellman-ford,recursive,dense,auto"]);
    let Command::Bench { corpus, algos, .. } = &cli.command else { unreachable!() };
    let reports = bench(corpus, algos, &cli.global).map_err(|e| e.msg).unwrap();
    print!("{}", summary_table(&reports));
}
