use clap::Parser;
use negsssp::cli::{run, Cli};

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {}", e.msg);
        std::process::exit(e.code);
    }
}
