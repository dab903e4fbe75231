//! Builds a layered sparsifier for a random graph and checks that it keeps
//! every distance while leaving only a few negative edges.
//!
//! cargo run --example sparsifier

use negsssp::base::{all_pairs_oracle, bellman_ford_all};
use negsssp::graph::generate::{generate, GenSpec};
use negsssp::layered::{build_sparsifier, SparsifyParams};

fn main() {
    let g = (0..)
        .map(|s| generate(&GenSpec::new(60, 240, 20, s)).unwrap())
        .find(|g| !bellman_ford_all(g).is_cycle())
        .unwrap();
    let u = g.neg_vertices().to_vec();
    for h in [2, 4, 8, 16] {
        let sp = build_sparsifier(&g, &u, &SparsifyParams { h, r: 1, c: 1.0, c0: 0.0 }, 7).unwrap();
        let exact = all_pairs_oracle(&g).unwrap();
        let through = all_pairs_oracle(&sp.graph).unwrap();
        let kept = (0..g.n())
            .flat_map(|a| (0..g.n()).map(move |b| (a, b)))
            .filter(|&(a, b)| through[sp.pi0[a]][sp.pi1[b]] == exact[a][b])
            .count();
        println!(
            "h = {h:>2}: {} vertices, {} edges, {} negative vertices after reweighting (input has {}), {kept}/{} pairs exact",
            sp.graph.n(),
            sp.graph.m(),
            sp.reweighted().k(),
            g.k(),
            g.n() * g.n(),
        );
    }
}
