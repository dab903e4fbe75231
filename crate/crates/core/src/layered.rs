//! Layered negative-edge sparsification.
//!
//! Given a set `U` of negative vertices whose `h`-hop negative reach `V_h` is
//! small, [`build_sparsifier`] stacks `h + 1` copies of the graph: layers 0
//! and `h` are full copies of the nonnegative part, the middle layers only
//! cover `V_h`. Negative edges move one layer up, and a random sample `U0`
//! of `U` gets zero-length reset arcs from the top layer back to layer 0.
//! After reweighting by the layer potentials only the resets can be negative.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{hop_from_labels, reweight, HopOptions, Potential};
use crate::error::SolveError;
use crate::graph::{membership, Edge, EdgeOrigin, Graph};
use crate::params::{choose_h_recursive, sample_size, Variant};
use crate::remote::{extract, negative_reach, ExtractMode, ExtractOutcome, ExtractParams};
use crate::solver::{AuxSolver, Ctx};
use crate::stats;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparsifyParams {
    pub h: usize,
    /// The reach of `U` may cover at most `n / r` vertices.
    pub r: usize,
    /// Sampling constant for `U0`.
    pub c: f64,
    /// Budgets below `c0 * ln n` give the identity sparsifier.
    pub c0: f64,
}

impl SparsifyParams {
    pub fn new(h: usize, r: usize) -> Self {
        SparsifyParams { h, r, c: 4.0, c0: 1.0 }
    }
}

#[derive(Clone, Debug)]
pub struct SparsifiedGraph {
    pub graph: Graph,
    /// Valid for `graph`; only reset arcs stay negative.
    pub phi: Potential,
    /// Vertex `v` of the input in layer 0.
    pub pi0: Vec<usize>,
    /// Vertex `v` of the input in layer `h`.
    pub pi1: Vec<usize>,
    pub u0: Vec<usize>,
    pub h: usize,
    /// `(layer, input vertex)` for every vertex of `graph`.
    pub provenance: Vec<(usize, usize)>,
    /// Input edge behind every edge of `graph`.
    pub origin: Vec<EdgeOrigin>,
    pub reset_edges: Vec<usize>,
    pub reach: Vec<usize>,
    pub degenerate: bool,
}

/// Sparsifier for `G_U`: all vertices and nonnegative edges of `g`, plus the
/// negative edges leaving `u`.
pub fn build_sparsifier(
    g: &Graph,
    u: &[usize],
    p: &SparsifyParams,
    seed: u64,
) -> Result<SparsifiedGraph, SolveError> {
    assert!(p.h >= 1, "hop budget must be positive");
    let n = g.n();
    let gu = g.restrict_negatives(u);
    let ln_n = (n.max(2) as f64).ln();

    if (p.h as f64) < p.c0 * ln_n {
        let graph = gu.graph.clone();
        let origin = gu.edge_of.iter().map(|&e| EdgeOrigin::Copy(e)).collect();
        let reset_edges = graph.negative_edges().collect();
        stats::add_aux_edges(graph.m() as u64);
        return Ok(SparsifiedGraph {
            phi: Potential::zeros(n),
            pi0: (0..n).collect(),
            pi1: (0..n).collect(),
            u0: u.to_vec(),
            h: p.h,
            provenance: (0..n).map(|v| (0, v)).collect(),
            origin,
            reset_edges,
            reach: Vec::new(),
            degenerate: true,
            graph,
        });
    }

    let cert = negative_reach(g, u, p.h);
    let limit = n / p.r.max(1);
    if cert.reach.len() > limit {
        return Err(SolveError::ReachTooLarge { reach: cert.reach.len(), limit });
    }
    let h = p.h;
    let opts = HopOptions { keep_layers: true, detect: true, ..Default::default() };
    let table = hop_from_labels(&gu.graph, vec![0.0; n], h, &opts)?;

    let in_reach = membership(n, &cert.reach);
    let mut idx = vec![usize::MAX; n];
    for (i, &x) in cert.reach.iter().enumerate() {
        idx[x] = i;
    }
    let r = cert.reach.len();
    let top = n + (h - 1) * r;
    let id = |layer: usize, v: usize| -> Option<usize> {
        if layer == 0 {
            Some(v)
        } else if layer == h {
            Some(top + v)
        } else if in_reach[v] {
            Some(n + (layer - 1) * r + idx[v])
        } else {
            None
        }
    };
    let n_h = top + n;

    let mut provenance = Vec::with_capacity(n_h);
    let mut phi = Vec::with_capacity(n_h);
    provenance.extend((0..n).map(|v| (0, v)));
    phi.extend(table.layer(0).iter().copied());
    for layer in 1..h {
        provenance.extend(cert.reach.iter().map(|&x| (layer, x)));
        phi.extend(cert.reach.iter().map(|&x| table.layer(layer)[x]));
    }
    provenance.extend((0..n).map(|v| (h, v)));
    phi.extend(table.layer(h).iter().copied());

    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut push = |edges: &mut Vec<Edge>, a: usize, b: usize, len: f64, o: EdgeOrigin| {
        edges.push(Edge::new(a, b, len));
        origin.push(o);
    };
    let local = &gu.graph;
    for (le, e) in local.edges().iter().enumerate() {
        let o = EdgeOrigin::Copy(gu.edge_of[le]);
        if e.len >= 0.0 {
            for layer in 0..=h {
                if let (Some(a), Some(b)) = (id(layer, e.tail), id(layer, e.head)) {
                    push(&mut edges, a, b, e.len, o);
                }
            }
            if in_reach[e.tail] && !in_reach[e.head] {
                for layer in 1..=h {
                    push(&mut edges, id(layer, e.tail).unwrap(), e.head, e.len, o);
                }
            }
        } else {
            for layer in 0..h {
                let a = id(layer, e.tail).expect("negative tail is in the reach");
                let b = id(layer + 1, e.head).expect("negative head is in the reach");
                push(&mut edges, a, b, e.len, o);
            }
        }
    }
    for v in 0..n {
        if in_reach[v] {
            for layer in 0..h {
                let (a, b) = (id(layer, v).unwrap(), id(layer + 1, v).unwrap());
                push(&mut edges, a, b, 0.0, EdgeOrigin::Connector);
            }
        } else {
            push(&mut edges, v, top + v, 0.0, EdgeOrigin::Connector);
        }
    }

    let want = sample_size(p.c, u.len(), n, h).min(u.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u0: Vec<usize> = sample(&mut rng, u.len(), want).into_iter().map(|i| u[i]).collect();
    u0.sort_unstable();
    let mut reset_edges = Vec::with_capacity(u0.len());
    for &x in &u0 {
        reset_edges.push(edges.len());
        push(&mut edges, top + x, x, 0.0, EdgeOrigin::Connector);
    }

    stats::add_aux_edges(edges.len() as u64);
    Ok(SparsifiedGraph {
        graph: Graph::build(n_h, edges),
        phi: Potential::from_distances(&phi),
        pi0: (0..n).collect(),
        pi1: (top..top + n).collect(),
        u0,
        h,
        provenance,
        origin,
        reset_edges,
        reach: cert.reach,
        degenerate: false,
    })
}

impl SparsifiedGraph {
    /// The sparsifier reweighted by its own potential.
    pub fn reweighted(&self) -> Graph {
        reweight(&self.graph, &self.phi)
    }

    /// Validity of `phi` on every arc except the resets, which are the arcs
    /// meant to stay negative.
    pub fn phi_is_valid(&self) -> bool {
        let mut reset = vec![false; self.graph.m()];
        for &e in &self.reset_edges {
            reset[e] = true;
        }
        self.graph.edges().iter().enumerate().all(|(i, e)| {
            reset[i] || e.len < 0.0 || e.len + self.phi.get(e.tail) - self.phi.get(e.head) >= 0.0
        })
    }
}

/// Distances `d(V, v)` in the graph a sparsifier stands for, read off the
/// sparsifier through a potential `big_phi` that neutralizes it: sources are
/// the layer-0 copies, targets the layer-`h` copies.
pub(crate) fn johnson_through(
    h_graph: &Graph,
    big_phi: &Potential,
    sources: &[usize],
    targets: &[usize],
) -> Vec<f64> {
    let hp = reweight(h_graph, big_phi);
    let mut dist = vec![f64::INFINITY; hp.n()];
    let mut parent = vec![None; hp.n()];
    for &s in sources {
        dist[s] = dist[s].min(-big_phi.get(s));
    }
    crate::base::dijkstra::settle(&hp, &mut dist, &mut parent, sources, |_| false, None, |_| {});
    targets.iter().map(|&t| dist[t] + big_phi.get(t)).collect()
}

/// Neutralizes every negative edge of `g` by repeatedly extracting a remote
/// set, sparsifying its restriction, and solving the sparsifier recursively.
pub fn solve_recursive(g: &Graph, cfg: &crate::solver::SolverConfig) -> Result<Potential, SolveError> {
    crate::solver::neutralize(g, cfg)
}

pub(crate) fn recursive_canonical(
    g: &Graph,
    variant: Variant,
    ctx: &mut Ctx,
) -> Result<Potential, SolveError> {
    let mut cur = Potential::zeros(g.n());
    loop {
        let gc = reweight(g, &cur);
        let k = gc.k();
        if k == 0 {
            return Ok(cur);
        }
        if k <= ctx.cfg.base_k {
            let phi = crate::base::johnson_neutralize(&gc)?;
            return Ok(crate::base::compose(&cur, &phi));
        }
        let h = choose_h_recursive(k, variant);
        let step = recursive_step(&gc, h, ctx)?;
        debug_assert!(crate::base::validate_potential(&gc, &step));
        cur = crate::base::compose(&cur, &step);
    }
}

/// One iteration: a potential valid for `g` that neutralizes at least one
/// negative edge.
fn recursive_step(g: &Graph, h: usize, ctx: &mut Ctx) -> Result<Potential, SolveError> {
    let params = ExtractParams {
        h,
        h0: h,
        b: h,
        mode: ExtractMode::Single,
        c_u: ctx.cfg.c_u,
        c_b: ctx.cfg.c_b,
        reduce: ctx.cfg.betweenness,
    };
    let seed = ctx.next_seed();
    let k = g.k();
    let outcome = match extract(g, &params, seed, &mut |aux: &Graph| ctx.neutralize_aux(aux, k)) {
        Ok(o) => o,
        Err(SolveError::ExtractionFailed { .. }) => return ctx.batch_fallback(g, h),
        Err(e) => return Err(e),
    };
    let (phi1, u) = match outcome {
        ExtractOutcome::Cycle(c) => return Err(c.into()),
        ExtractOutcome::Neutralized { phi, .. } => return Ok(phi),
        ExtractOutcome::Remote { phi, u, .. } => (phi, u),
    };
    let g1 = reweight(g, &phi1);
    let phi_c = neutralize_restriction(&g1, &u, h, 1, ctx, AuxSolver::Dispatch)?;
    Ok(crate::base::compose(&phi1, &phi_c))
}

/// A potential neutralizing `G_U` (the negative edges of `g` leaving `u` plus
/// all nonnegative edges) that is valid for `g`, computed through a
/// recursively solved sparsifier. Retries with fresh samples when the result
/// fails verification.
pub(crate) fn neutralize_restriction(
    g: &Graph,
    u: &[usize],
    h: usize,
    r: usize,
    ctx: &mut Ctx,
    solver: AuxSolver,
) -> Result<Potential, SolveError> {
    let gu = g.restrict_negatives(u);
    let params = SparsifyParams { h, r, c: ctx.cfg.sample_const, c0: ctx.cfg.c0 };
    let attempts = 1 + ctx.cfg.retries;
    let k = g.k();
    for attempt in 0..attempts {
        if attempt > 0 {
            stats::add_retry();
        }
        let sp = build_sparsifier(g, u, &params, ctx.next_seed())?;
        if sp.degenerate && sp.graph.k() >= k {
            // Nothing to gain from recursing on the same instance.
            let phi = crate::base::johnson_neutralize(&gu.graph).map_err(|c| {
                SolveError::CycleFound(c.map_edges(&gu.edge_of, g))
            })?;
            return Ok(phi);
        }
        let hphi = sp.reweighted();
        let psi = match ctx.neutralize_aux_with(&hphi, k, solver) {
            Ok(psi) => psi,
            Err(SolveError::CycleFound(c)) => {
                return Err(ctx.lift_cycle(&c, &sp.origin, g).into());
            }
            Err(e) => return Err(e),
        };
        let big = crate::base::compose(&sp.phi, &psi);
        let d = johnson_through(&sp.graph, &big, &sp.pi0, &sp.pi1);
        let phi = Potential::from_distances(&d);
        if crate::base::neutralizes(&gu.graph, &phi) {
            return Ok(phi);
        }
    }
    Err(SolveError::RetryBudgetExhausted { stage: "layered sparsification", attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::all_pairs_oracle;

    fn chain() -> Graph {
        // 0 -> 1 (-2) -> 2 (1) -> 3 (-1) -> 4, plus return edges.
        Graph::new(
            6,
            vec![
                Edge::new(0, 1, -2.0),
                Edge::new(1, 2, 1.0),
                Edge::new(2, 3, -1.0),
                Edge::new(3, 4, 3.0),
                Edge::new(4, 0, 5.0),
                Edge::new(4, 5, 0.0),
                Edge::new(5, 2, 2.0),
            ],
        )
        .unwrap()
    }

    fn params(h: usize) -> SparsifyParams {
        SparsifyParams { h, r: 1, c: 4.0, c0: 0.0 }
    }

    #[test]
    fn empty_u_keeps_nonnegative_distances() {
        let g = chain();
        let sp = build_sparsifier(&g, &[], &params(2), 1).unwrap();
        assert_eq!(sp.reweighted().k(), 0);
        let dh = all_pairs_oracle(&sp.graph).unwrap();
        let dg = all_pairs_oracle(&g.nonnegative_part().graph).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(dh[sp.pi0[u]][sp.pi1[v]], dg[u][v]);
            }
        }
    }

    #[test]
    fn preserves_restricted_distances() {
        let g = chain();
        let u = g.neg_vertices().to_vec();
        let sp = build_sparsifier(&g, &u, &params(2), 7).unwrap();
        assert!(sp.phi_is_valid());
        let neg: Vec<usize> = sp.reweighted().negative_edges().collect();
        assert!(neg.iter().all(|e| sp.reset_edges.contains(e)));
        let dh = all_pairs_oracle(&sp.graph).unwrap();
        let dg = all_pairs_oracle(&g).unwrap();
        for a in 0..g.n() {
            for b in 0..g.n() {
                assert_eq!(dh[sp.pi0[a]][sp.pi1[b]], dg[a][b], "{a} -> {b}");
            }
        }
    }

    #[test]
    fn small_budget_is_identity() {
        let g = chain();
        let sp = build_sparsifier(&g, &[0], &SparsifyParams::new(1, 1), 0).unwrap();
        assert!(sp.degenerate);
        assert_eq!(sp.graph.k(), 1);
    }

    #[test]
    fn reach_limit_is_enforced() {
        let g = chain();
        let err = build_sparsifier(&g, &[0, 2], &SparsifyParams { r: 6, ..params(2) }, 0);
        assert!(matches!(err, Err(SolveError::ReachTooLarge { .. })));
    }
}
