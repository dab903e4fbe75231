//! Bootstraps a hop reducer level by level and compares hop counts: how
//! many rounds a hop-bounded search needs in the graph and in the reducer.
//!
//! cargo run --example reducer

use negsssp::base::{bellman_ford_all, hop_sssp, johnson_neutralize};
use negsssp::bootstrap::{
    bootstrap_full, seed_estimates_via_neutralized_subgraph, BootstrapConfig, LevelFamily,
};
use negsssp::graph::generate::{generate, GenSpec};

fn main() {
    let g = (0..)
        .map(|s| generate(&GenSpec::new(120, 480, 30, s).weights((0, 30), (-6, -1))).unwrap())
        .find(|g| !bellman_ford_all(g).is_cycle())
        .unwrap();
    let fam = LevelFamily::new(&g, g.neg_vertices(), BootstrapConfig::new(16, 2, 2.0));
    let cfg = fam.cfg;
    println!("levels {}..={}, seeds up to {}", cfg.i0, cfg.l, cfg.i1);
    for i in cfg.i0..=cfg.l {
        println!("  V_{i}: {} vertices", fam.level(i).n());
    }
    let seeds = (cfg.i0 + 1..=cfg.i1)
        .map(|j| {
            let phi = johnson_neutralize(&fam.level(j).sub.graph).unwrap();
            seed_estimates_via_neutralized_subgraph(&fam, j, &phi, cfg.c, j as u64).unwrap()
        })
        .collect();
    let red = bootstrap_full(&fam, seeds, 1).unwrap();
    let hr = red.reweighted();
    println!(
        "level-{} reducer: {} vertices, {} edges, {} resets, factor {}",
        red.level,
        red.graph.n(),
        red.graph.m(),
        red.resets.len(),
        red.factor
    );
    let gu = &fam.gu.graph;
    let exact = hop_sssp(gu, &[0], gu.k()).unwrap();
    let through = hop_sssp(&hr, &[red.embed[0]], hr.k()).unwrap();
    let same = (0..g.n()).filter(|&v| through.dist[red.embed[v]] == exact.dist[v]).count();
    println!(
        "from vertex 0: {} rounds in G_U, {} rounds in the reducer, {same}/{} distances equal",
        exact.rounds,
        through.rounds,
        g.n()
    );
}
