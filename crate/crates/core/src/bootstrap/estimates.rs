//! Sparse distance estimates.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::reducer::{GadgetIndex, HopReducer};
use super::LevelFamily;
use crate::base::{hop_from_labels, neutralizes, HopOptions, Potential};
use crate::error::SolveError;
use crate::graph::{Edge, EdgeOrigin, Graph};
use crate::params::sample_size;
use crate::stats;

/// Upper bounds on distances through a sample `X_j` of `U` at level `j`.
///
/// `delta_out[a][t]` bounds the distance from `u[a]` to `x[t]`, and
/// `delta_in[t][b]` the distance from `x[t]` to `heads[b]`. Unreachable pairs
/// hold `+inf`. All ids are vertices of the family's parent graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseDistanceEstimates {
    pub level: usize,
    pub x: Vec<usize>,
    pub u: Vec<usize>,
    pub heads: Vec<usize>,
    pub delta_out: Vec<Vec<f64>>,
    pub delta_in: Vec<Vec<f64>>,
}

/// Level-`i` estimates from a hop reducer for `G_i`: two-hop distances to and
/// from each sampled `x` in the reducer, clamped from below by the level's
/// hop tables.
pub fn estimates_from_reducer(
    red: &HopReducer,
    fam: &LevelFamily,
    c: f64,
    seed: u64,
) -> SparseDistanceEstimates {
    let lvl = fam.level(red.level);
    let u = &fam.u;
    let want = sample_size(c, u.len(), fam.n(), 1 << red.level).min(u.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<usize> = sample(&mut rng, u.len(), want).into_iter().map(|i| u[i]).collect();
    x.sort_unstable();
    stats::add_estimate_samples(x.len() as u64);

    let hr = red.reweighted();
    let ht = hr.transpose();
    let two_hops = |g: &Graph, from: usize| {
        let mut init = vec![f64::INFINITY; g.n()];
        init[from] = 0.0;
        hop_from_labels(g, init, 2, &HopOptions::default()).expect("no detection requested").dist
    };
    let at = |v: usize| red.embed[lvl.local(v)];

    let mut delta_out = vec![Vec::with_capacity(x.len()); u.len()];
    let mut delta_in = Vec::with_capacity(x.len());
    for &xv in &x {
        let a = lvl.half[lvl.local(xv)];
        let to_x = two_hops(&ht, at(xv));
        for (row, &uv) in delta_out.iter_mut().zip(u) {
            row.push(to_x[at(uv)].max(a));
        }
        let from_x = two_hops(&hr, at(xv));
        delta_in.push(
            fam.heads.iter().map(|&v| from_x[at(v)].max(lvl.full[lvl.local(v)] - a)).collect(),
        );
    }
    SparseDistanceEstimates {
        level: red.level,
        x,
        u: u.clone(),
        heads: fam.heads.clone(),
        delta_out,
        delta_in,
    }
}

/// Level-`j` estimates from a potential `phi_c` that neutralizes `G_j`
/// (indexed by local id). Builds the two-copy reducer: `G_j+` next to `G_j`
/// reweighted by `phi_c`, joined by an arc `v' -> v''` of length `-phi_c(v)`
/// and an arc back of length `phi_c(v)`, with `phi_c` shifted to be
/// nonnegative. One hop of it covers any walk of `G_j`.
pub fn seed_estimates_via_neutralized_subgraph(
    fam: &LevelFamily,
    j: usize,
    phi_c: &Potential,
    c: f64,
    seed: u64,
) -> Result<SparseDistanceEstimates, SolveError> {
    let lvl = fam.level(j);
    let g = &lvl.sub.graph;
    if !neutralizes(g, phi_c) {
        return Err(SolveError::NotNeutralized);
    }
    let p = phi_c.shifted_nonnegative();
    let n = g.n();
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (le, e) in g.edges().iter().enumerate() {
        let o = EdgeOrigin::Copy(fam.parent_edge(j, le));
        if e.len >= 0.0 {
            edges.push(*e);
            origin.push(o);
        }
        let len = e.len + p.get(e.tail) - p.get(e.head);
        edges.push(Edge::new(n + e.tail, n + e.head, len));
        origin.push(o);
    }
    let mut resets = Vec::with_capacity(n);
    for v in 0..n {
        resets.push(edges.len());
        edges.push(Edge::new(v, n + v, -p.get(v)));
        origin.push(EdgeOrigin::Connector);
        edges.push(Edge::new(n + v, v, p.get(v)));
        origin.push(EdgeOrigin::Connector);
    }
    stats::add_aux_edges(edges.len() as u64);
    let red = HopReducer {
        level: j,
        graph: Graph::build(2 * n, edges),
        phi: Potential::zeros(2 * n),
        factor: n.max(1),
        embed: (0..n).collect(),
        origin,
        resets,
        gadgets: GadgetIndex { base: 0..n, mirror: Some(n..2 * n), ..Default::default() },
    };
    Ok(estimates_from_reducer(&red, fam, c, seed))
}
