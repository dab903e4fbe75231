#![allow(dead_code)]

use negsssp::base::{bellman_ford_all, bellman_ford_oracle, johnson_neutralize, DistanceResult};
use negsssp::bootstrap::{seed_estimates_via_neutralized_subgraph, LevelFamily, SparseDistanceEstimates};
use negsssp::graph::generate::{generate, GenSpec};
use negsssp::{solve, Graph, Solution, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random instance in the oracle-suite family: integer weights in
/// [-8, 20], at most n/4 negative edges, every fifth one with a planted cycle.
pub fn suite_instance(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(8..=max_n);
    let m = rng.gen_range(n..=(8 * n).min(800));
    let negatives = rng.gen_range(1..=n / 4);
    let spec = GenSpec::new(n, m, negatives, seed).weights((0, 20), (-8, -1)).planted(seed.is_multiple_of(5));
    generate(&spec).unwrap()
}

/// Checks a solver run against Bellman-Ford. Returns a description of the
/// first mismatch.
pub fn check_against_oracle(g: &Graph, cfg: &SolverConfig) -> Result<(), String> {
    let has_cycle = bellman_ford_all(g).is_cycle();
    let got = solve(g, 0, cfg).map_err(|e| format!("solver error: {e}"))?;
    match (has_cycle, got) {
        (true, Solution::Cycle(c)) => {
            if c.verify(g) && c.length < 0.0 {
                Ok(())
            } else {
                Err("returned cycle is not a negative cycle".into())
            }
        }
        (true, Solution::Distances { .. }) => Err("missed a negative cycle".into()),
        (false, Solution::Cycle(_)) => Err("reported a cycle in a cycle-free graph".into()),
        (false, Solution::Distances { dist, .. }) => match bellman_ford_oracle(g, 0) {
            DistanceResult::Distances(sp) if sp.dist == dist => Ok(()),
            DistanceResult::Distances(sp) => {
                let v = (0..g.n()).find(|&v| sp.dist[v] != dist[v]).unwrap();
                Err(format!("distance to {v}: got {}, expected {}", dist[v], sp.dist[v]))
            }
            DistanceResult::Cycle(_) => unreachable!(),
        },
    }
}

/// A generated instance without negative cycles, redrawn until one is found.
pub fn acyclic_instance(n: usize, m: usize, k: usize, seed: u64) -> Graph {
    (0..)
        .map(|i| generate(&GenSpec::new(n, m, k, seed + 1000 * i)).unwrap())
        .find(|g| !bellman_ford_all(g).is_cycle())
        .unwrap()
}

/// Seed estimates for levels `i0 + 1..=i1`, each from Johnson on its own level.
pub fn johnson_seeds(fam: &LevelFamily, seed: u64) -> Vec<SparseDistanceEstimates> {
    (fam.cfg.i0 + 1..=fam.cfg.i1)
        .map(|j| {
            let phi = johnson_neutralize(&fam.level(j).sub.graph).unwrap();
            seed_estimates_via_neutralized_subgraph(fam, j, &phi, fam.cfg.c, seed + j as u64).unwrap()
        })
        .collect()
}
