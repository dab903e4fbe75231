//! Runs remote-set extraction on a canonical graph and prints the outcome
//! with its reach certificates.
//!
//! cargo run --example remote

use negsssp::base::{johnson_neutralize, Potential};
use negsssp::graph::generate::{generate, GenSpec};
use negsssp::graph::preprocess::preprocess;
use negsssp::remote::{extract, ExtractMode, ExtractOutcome, ExtractParams};
use negsssp::{Graph, SolveError};

fn main() {
    let g = generate(&GenSpec::new(1000, 5000, 400, 1).weights((0, 30), (-2, -1))).unwrap();
    let (g, _) = preprocess(&g).unwrap();
    println!("canonical graph: n = {}, m = {}, k = {}", g.n(), g.m(), g.k());
    let params = ExtractParams {
        h: 8,
        h0: 2,
        b: 8,
        mode: ExtractMode::Graded,
        c_u: 1.0,
        c_b: 4.0,
        reduce: true,
    };
    let mut johnson = |aux: &Graph| -> Result<Potential, SolveError> { Ok(johnson_neutralize(aux)?) };
    match extract(&g, &params, 11, &mut johnson) {
        Ok(ExtractOutcome::Cycle(c)) => println!("negative cycle through {} vertices", c.vertices.len()),
        Ok(ExtractOutcome::Neutralized { count, .. }) => println!("neutralized {count} negative edges outright"),
        Ok(ExtractOutcome::Remote { u, certs, .. }) => {
            println!("remote set of {} negative vertices", u.len());
            for c in certs {
                println!("  {}-hop reach: {} vertices, {} edges", c.h, c.reach.len(), c.reach_edges);
            }
        }
        Err(e) => println!("extraction failed: {e}"),
    }
}
