//! Level-by-level reducer construction.

use std::ops::Range;

use super::estimates::{estimates_from_reducer, SparseDistanceEstimates};
use super::LevelFamily;
use crate::base::{reweight, Potential};
use crate::error::SolveError;
use crate::graph::{Edge, EdgeOrigin, Graph};
use crate::stats;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutGadget {
    pub level: usize,
    /// Copy of `G_j+`, indexed by local id of `G_j`.
    pub copy: Range<usize>,
    /// One vertex per sampled `x`, in the order of the estimates.
    pub xprime: Range<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetIndex {
    pub base: Range<usize>,
    pub shortcuts: Vec<ShortcutGadget>,
    /// `h0` copies of `G_i0+`, layer-major.
    pub layered: Option<Range<usize>>,
    /// The reweighted copy of the two-copy seed reducer.
    pub mirror: Option<Range<usize>>,
}

#[derive(Clone, Debug)]
pub struct HopReducer {
    pub level: usize,
    pub graph: Graph,
    pub phi: Potential,
    /// An `eta`-hop walk of `G_i` maps to about `eta / factor` hops.
    pub factor: usize,
    /// Local vertex of `G_i` -> its base copy.
    pub embed: Vec<usize>,
    /// Parent-graph edge behind each edge.
    pub origin: Vec<EdgeOrigin>,
    pub resets: Vec<usize>,
    pub gadgets: GadgetIndex,
}

impl HopReducer {
    pub fn reweighted(&self) -> Graph {
        reweight(&self.graph, &self.phi)
    }
}

#[derive(Default)]
struct Builder {
    edges: Vec<Edge>,
    origin: Vec<EdgeOrigin>,
    resets: Vec<usize>,
    phi: Vec<f64>,
}

impl Builder {
    fn vertices(&mut self, phi: impl IntoIterator<Item = f64>) -> Range<usize> {
        let start = self.phi.len();
        self.phi.extend(phi);
        start..self.phi.len()
    }

    fn arc(&mut self, a: usize, b: usize, len: f64, o: EdgeOrigin) {
        if len.is_finite() {
            self.edges.push(Edge::new(a, b, len));
            self.origin.push(o);
        }
    }

    fn reset(&mut self, a: usize, b: usize) {
        self.resets.push(self.edges.len());
        self.arc(a, b, 0.0, EdgeOrigin::Connector);
    }
}

/// The level-`i` reducer, a `2^(i-2)`-hop reducer for `G_i`. Needs estimates
/// for every level strictly between `i0` and `i`.
pub fn build_reducer(
    i: usize,
    fam: &LevelFamily,
    estimates: &[SparseDistanceEstimates],
) -> Result<HopReducer, SolveError> {
    let cfg = fam.cfg;
    assert!(i > cfg.i1 && i <= cfg.l, "level {i} outside {}..={}", cfg.i1 + 1, cfg.l);
    let lvl = fam.level(i);
    let gi = &lvl.sub.graph;
    let mut b = Builder::default();

    let base = b.vertices(vec![0.0; gi.n()]);
    for (le, e) in gi.edges().iter().enumerate() {
        if e.len >= 0.0 {
            b.arc(e.tail, e.head, e.len, EdgeOrigin::Copy(fam.parent_edge(i, le)));
        }
    }

    let mut shortcuts = Vec::new();
    for j in cfg.i0 + 1..i {
        let est = estimates
            .iter()
            .find(|e| e.level == j)
            .ok_or(SolveError::MissingEstimates(j))?;
        let lj = fam.level(j);
        let copy = b.vertices(lj.full.iter().copied());
        let xprime = b.vertices(est.x.iter().map(|&x| lj.half[lj.local(x)]));
        for (le, e) in lj.sub.graph.edges().iter().enumerate() {
            if e.len >= 0.0 {
                let o = EdgeOrigin::Copy(fam.parent_edge(j, le));
                b.arc(copy.start + e.tail, copy.start + e.head, e.len, o);
            }
        }
        for (le, e) in gi.edges().iter().enumerate() {
            let (y, z) = (lvl.sub.vertex_of[e.tail], lvl.sub.vertex_of[e.head]);
            if lj.contains(y) && !lj.contains(z) {
                let o = EdgeOrigin::Copy(fam.parent_edge(i, le));
                b.arc(copy.start + lj.local(y), e.head, e.len, o);
            }
        }
        for y in 0..lj.n() {
            b.reset(copy.start + y, lvl.local(lj.sub.vertex_of[y]));
        }
        for (row, &u) in est.delta_out.iter().zip(&est.u) {
            for (t, &d) in row.iter().enumerate() {
                b.arc(lvl.local(u), xprime.start + t, d, EdgeOrigin::Shortcut);
            }
        }
        for (t, row) in est.delta_in.iter().enumerate() {
            for (&v, &d) in est.heads.iter().zip(row) {
                b.arc(xprime.start + t, copy.start + lj.local(v), d, EdgeOrigin::Shortcut);
            }
        }
        shortcuts.push(ShortcutGadget { level: j, copy, xprime });
    }

    let l0 = fam.level(cfg.i0);
    let n0 = l0.n();
    let layered = b.vertices((1..=cfg.h0).flat_map(|eta| l0.layers[eta].iter().copied()));
    let at = |eta: usize, v: usize| layered.start + (eta - 1) * n0 + v;
    for (le, e) in l0.sub.graph.edges().iter().enumerate() {
        let o = EdgeOrigin::Copy(fam.parent_edge(cfg.i0, le));
        for eta in 1..=cfg.h0 {
            if e.len >= 0.0 {
                b.arc(at(eta, e.tail), at(eta, e.head), e.len, o);
            } else {
                let from = if eta == 1 {
                    lvl.local(l0.sub.vertex_of[e.tail])
                } else {
                    at(eta - 1, e.tail)
                };
                b.arc(from, at(eta, e.head), e.len, o);
            }
        }
    }
    for (le, e) in gi.edges().iter().enumerate() {
        let (x, y) = (lvl.sub.vertex_of[e.tail], lvl.sub.vertex_of[e.head]);
        if l0.contains(x) && !l0.contains(y) {
            let o = EdgeOrigin::Copy(fam.parent_edge(i, le));
            for eta in 1..=cfg.h0 {
                b.arc(at(eta, l0.local(x)), e.head, e.len, o);
            }
        }
    }
    for v in 0..n0 {
        let home = lvl.local(l0.sub.vertex_of[v]);
        for eta in 1..=cfg.h0 {
            b.reset(at(eta, v), home);
        }
    }

    stats::add_aux_edges(b.edges.len() as u64);
    let n_h = b.phi.len();
    Ok(HopReducer {
        level: i,
        graph: Graph::build(n_h, b.edges),
        phi: Potential::new(b.phi),
        factor: 1 << (i - 2),
        embed: base.clone().collect(),
        origin: b.origin,
        resets: b.resets,
        gadgets: GadgetIndex { base, shortcuts, layered: Some(layered), mirror: None },
    })
}

/// Builds reducers from level `i1 + 1` up to `L`, deriving each level's
/// estimates from the reducer below it. `seeds` must cover levels
/// `i0 + 1..=i1`.
pub fn bootstrap_full(
    fam: &LevelFamily,
    mut seeds: Vec<SparseDistanceEstimates>,
    seed: u64,
) -> Result<HopReducer, SolveError> {
    let cfg = fam.cfg;
    let mut i = cfg.i1 + 1;
    loop {
        let red = build_reducer(i, fam, &seeds)?;
        if i == cfg.l {
            return Ok(red);
        }
        seeds.push(estimates_from_reducer(&red, fam, cfg.c, seed.wrapping_add(i as u64)));
        i += 1;
    }
}
