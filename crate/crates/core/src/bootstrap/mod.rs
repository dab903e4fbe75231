//! Bootstrapped hop reducers and the solvers built on them.
//!
//! A hop reducer for a graph `G_i` is an auxiliary graph `H` with a potential
//! under which only reset arcs are negative, such that any `eta`-hop walk of
//! `G_i` between base vertices is matched in `H` by a walk with about
//! `eta / factor` hops, and no walk of `H` undercuts a distance of `G_i`.
//!
//! [`LevelFamily`] holds the nested reaches `V_i0 ⊆ ... ⊆ V_L = V` of a remote
//! set `U` together with their hop tables. [`build_reducer`] assembles the
//! level-`i` reducer from sparse distance estimates of the levels below it,
//! and [`estimates_from_reducer`] reads the next level's estimates off it.

pub mod dense;
mod estimates;
mod reducer;
pub mod sparse;
pub mod twice;

pub use dense::solve_dense;
pub use estimates::{
    estimates_from_reducer, seed_estimates_via_neutralized_subgraph, SparseDistanceEstimates,
};
pub use reducer::{bootstrap_full, build_reducer, GadgetIndex, HopReducer, ShortcutGadget};
pub use sparse::solve_sparse;
pub use twice::solve_twice_recursive;

use crate::base::{hop_from_labels, HopOptions};
use crate::graph::{membership, Graph, Subgraph};
use crate::remote::negative_reach;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BootstrapConfig {
    pub h: usize,
    /// Power of two.
    pub h0: usize,
    pub i0: usize,
    pub i1: usize,
    /// `ceil(log2 h) + 1`
    pub l: usize,
    /// Sampling constant for the estimate sets `X_j`.
    pub c: f64,
}

impl BootstrapConfig {
    pub fn new(h: usize, h0: usize, c: f64) -> Self {
        assert!(h0 >= 2 && h0.is_power_of_two(), "h0 must be a power of two, at least 2");
        assert!(h >= h0, "h must be at least h0");
        let i0 = h0.trailing_zeros() as usize;
        let i1 = 2 * i0;
        let l = (h as f64).log2().ceil() as usize + 1;
        assert!(i1 < l, "h = {h} is too small for h0 = {h0}");
        BootstrapConfig { h, h0, i0, i1, l, c }
    }
}

/// The induced subgraph `G_i` on `V_i` with the hop tables the reducers need.
#[derive(Clone, Debug)]
pub struct Level {
    pub i: usize,
    pub sub: Subgraph,
    /// `d^{2^(i-1)}(V_i, v)` inside `G_i`, by local id.
    pub half: Vec<f64>,
    /// `d^{2^i}(V_i, v)` inside `G_i`, by local id.
    pub full: Vec<f64>,
    /// `d^eta(V_i, v)` for `eta = 0..=h0`; only kept on level `i0`.
    pub layers: Vec<Vec<f64>>,
}

impl Level {
    pub fn n(&self) -> usize {
        self.sub.graph.n()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.sub.local_of[v].is_some()
    }

    pub fn local(&self, v: usize) -> usize {
        self.sub.local_of[v].expect("vertex outside this level")
    }
}

/// Levels `i0..=L` for a set `U` of negative vertices of `g`. Every vertex
/// id is a vertex of `g`, and `G_U` keeps the ids of `g`.
#[derive(Clone, Debug)]
pub struct LevelFamily {
    pub cfg: BootstrapConfig,
    /// Sorted.
    pub u: Vec<usize>,
    /// Heads of the negative edges leaving `U`, sorted.
    pub heads: Vec<usize>,
    pub gu: Subgraph,
    levels: Vec<Level>,
}

impl LevelFamily {
    pub fn new(g: &Graph, u: &[usize], cfg: BootstrapConfig) -> Self {
        let n = g.n();
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        let gu = g.restrict_negatives(&u);
        let heads = gu.graph.heads_of(&u);
        let levels = (cfg.i0..=cfg.l)
            .map(|i| {
                let keep = if i == cfg.l {
                    vec![true; n]
                } else {
                    membership(n, &negative_reach(g, &u, 1 << i).reach)
                };
                let sub = gu.graph.induced(&keep);
                let opts = HopOptions { keep_layers: true, ..Default::default() };
                let t = hop_from_labels(&sub.graph, vec![0.0; sub.graph.n()], 1 << i, &opts)
                    .expect("no detection requested");
                let layers = if i == cfg.i0 {
                    (0..=cfg.h0).map(|eta| t.layer(eta).to_vec()).collect()
                } else {
                    Vec::new()
                };
                Level {
                    i,
                    half: t.layer(1 << (i - 1)).to_vec(),
                    full: t.layer(1 << i).to_vec(),
                    layers,
                    sub,
                }
            })
            .collect();
        LevelFamily { cfg, u, heads, gu, levels }
    }

    pub fn level(&self, i: usize) -> &Level {
        assert!((self.cfg.i0..=self.cfg.l).contains(&i), "level {i} outside the family");
        &self.levels[i - self.cfg.i0]
    }

    /// Number of vertices of the parent graph.
    pub fn n(&self) -> usize {
        self.gu.graph.n()
    }

    /// Parent edge behind local edge `le` of `G_i`.
    pub fn parent_edge(&self, i: usize, le: usize) -> usize {
        self.gu.edge_of[self.level(i).sub.edge_of[le]]
    }
}

#[cfg(test)]
pub(crate) mod testkit {
    use super::*;
    use crate::base::{bellman_ford_all, johnson_neutralize};
    use crate::graph::generate::{generate, GenSpec};

    /// A generated instance without negative cycles.
    pub fn acyclic_instance(n: usize, m: usize, k: usize, seed: u64) -> Graph {
        (0..)
            .map(|i| generate(&GenSpec::new(n, m, k, seed + 1000 * i)).unwrap())
            .find(|g| !bellman_ford_all(g).is_cycle())
            .unwrap()
    }

    /// Seed estimates for levels `i0 + 1..=i1` from Johnson on `G_i1`.
    pub fn seeds(fam: &LevelFamily) -> Vec<SparseDistanceEstimates> {
        let cfg = fam.cfg;
        let top = fam.level(cfg.i1);
        let phi = johnson_neutralize(&top.sub.graph).unwrap();
        (cfg.i0 + 1..=cfg.i1)
            .map(|j| {
                let lj = fam.level(j);
                let local: Vec<usize> = lj.sub.vertex_of.iter().map(|&v| top.local(v)).collect();
                seed_estimates_via_neutralized_subgraph(fam, j, &phi.pull(&local), cfg.c, j as u64)
                    .unwrap()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_levels() {
        let c = BootstrapConfig::new(8, 2, 4.0);
        assert_eq!((c.i0, c.i1, c.l), (1, 2, 4));
        let c = BootstrapConfig::new(3, 2, 4.0);
        assert_eq!((c.i1, c.l), (2, 3));
    }

    #[test]
    #[should_panic(expected = "too small")]
    fn config_rejects_flat_hierarchy() {
        BootstrapConfig::new(2, 2, 4.0);
    }

    #[test]
    fn reaches_are_nested() {
        let g = testkit::acyclic_instance(40, 160, 8, 3);
        let fam = LevelFamily::new(&g, g.neg_vertices(), BootstrapConfig::new(8, 2, 4.0));
        for i in fam.cfg.i0..fam.cfg.l {
            let (a, b) = (fam.level(i), fam.level(i + 1));
            assert!(a.sub.vertex_of.iter().all(|&v| b.contains(v)));
        }
        assert_eq!(fam.level(fam.cfg.l).n(), g.n());
        assert!(fam.u.iter().all(|&u| fam.level(fam.cfg.i0).contains(u)));
    }
}
