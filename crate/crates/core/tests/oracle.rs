//! Every solver against Bellman-Ford, under configurations that push work
//! into the less common code paths.

mod common;

use negsssp::remote::ExtractMode;
use negsssp::{Algorithm, SolverConfig};
use rayon::prelude::*;

fn sweep(seeds: std::ops::Range<u64>, max_n: usize, algos: &[Algorithm], tweak: impl Fn(&mut SolverConfig) + Sync) {
    let failures: Vec<String> = seeds
        .into_par_iter()
        .flat_map_iter(|seed| {
            let g = common::suite_instance(seed, max_n);
            let tweak = &tweak;
            algos.iter().filter_map(move |&a| {
                let mut cfg = SolverConfig::with_algorithm(a).seed(seed);
                tweak(&mut cfg);
                common::check_against_oracle(&g, &cfg).err().map(|e| format!("{} seed {seed}: {e}", a.name()))
            })
        })
        .collect();
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

const BOOTSTRAPPED: [Algorithm; 5] =
    [Algorithm::Dense, Algorithm::Sparse, Algorithm::TwiceRecursive, Algorithm::TwiceSparse, Algorithm::Auto];

#[test]
fn without_betweenness_the_reducers_do_the_work() {
    sweep(0..200, 120, &BOOTSTRAPPED, |c| {
        c.base_k = 2;
        c.betweenness = false;
    });
}

#[test]
fn layers_forced_at_every_size() {
    sweep(200..400, 120, &BOOTSTRAPPED, |c| {
        c.base_k = 2;
        c.c0 = 0.0;
        c.forced_h = Some(3);
        c.betweenness = false;
    });
}

#[test]
fn recursive_solvers_with_tiny_base_case() {
    sweep(400..600, 120, &[Algorithm::Recursive, Algorithm::RecursiveImproved], |c| {
        c.base_k = 1;
        c.c0 = 0.0;
    });
}

#[test]
fn extraction_mode_overrides() {
    for mode in [ExtractMode::Single, ExtractMode::Graded] {
        sweep(600..700, 100, &Algorithm::ALL[1..], |c| {
            c.base_k = 2;
            c.extract_mode = Some(mode);
        });
    }
}

#[test]
fn shallow_recursion_and_sparse_sampling() {
    sweep(700..800, 120, &BOOTSTRAPPED, |c| {
        c.base_k = 2;
        c.max_depth = 1;
        c.sample_const = 0.5;
        c.c_u = 2.0;
        c.retries = 8;
    });
}

#[test]
fn acyclic_instances_give_exact_distances() {
    let failures: Vec<String> = (0..60u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let g = common::acyclic_instance(30 + seed as usize, 150 + 4 * seed as usize, 10, seed);
            Algorithm::ALL.into_iter().filter_map(move |a| {
                // Acyclic, so Bellman-Ford's reachable-only cycle reporting does not matter.
                let cfg = SolverConfig { base_k: 2, ..SolverConfig::with_algorithm(a).seed(seed) };
                common::check_against_oracle(&g, &cfg).err().map(|e| format!("{} seed {seed}: {e}", a.name()))
            })
        })
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
