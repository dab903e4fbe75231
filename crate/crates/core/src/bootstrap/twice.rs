//! The twice-recursive solver and its sparse wrapper.
//!
//! Each iteration extracts a remote set `U` and builds one auxiliary graph
//! for `G_U`: full copies of the nonnegative part at layers 0 and `b`,
//! `b - 1` middle layers over the `h`-hop reach `V_h`, a shortcut layer
//! through a sample `X` of `U` whose arc lengths come from a recursively
//! neutralized `G[V_h]`, and reset arcs from layer `b` back to layer 0 for a
//! sample `U0` of `U`. Only the resets stay negative under the layer
//! potentials; the residual is solved recursively as well.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sparse::layers_pay_off;
use crate::base::{
    compose, dijkstra, hop_from_labels, johnson_neutralize, neutralizes, reweight, HopOptions,
    Potential,
};
use crate::error::SolveError;
use crate::graph::{membership, Edge, EdgeOrigin, Graph};
use crate::layered::{johnson_through, neutralize_restriction};
use crate::params::{sample_size, twice_params, twice_sparse_h};
use crate::remote::{extract, negative_reach, ExtractMode, ExtractOutcome, ExtractParams};
use crate::solver::{Algorithm, AuxSolver, Ctx, SolverConfig};
use crate::stats;

pub fn solve_twice_recursive(g: &Graph, cfg: &SolverConfig) -> Result<Potential, SolveError> {
    let cfg = SolverConfig { algorithm: Algorithm::TwiceRecursive, ..cfg.clone() };
    crate::solver::neutralize(g, &cfg)
}

pub(crate) fn twice_sparse_canonical(g: &Graph, ctx: &mut Ctx) -> Result<Potential, SolveError> {
    let h = ctx.cfg.forced_h.unwrap_or_else(|| twice_sparse_h(g.k(), g.m()));
    if !layers_pay_off(g, h, ctx) {
        return twice_canonical(g, ctx);
    }
    neutralize_restriction(g, g.neg_vertices(), h, 1, ctx, AuxSolver::Twice)
}

pub(crate) fn twice_canonical(g: &Graph, ctx: &mut Ctx) -> Result<Potential, SolveError> {
    let mut cur = Potential::zeros(g.n());
    loop {
        let gc = reweight(g, &cur);
        let k = gc.k();
        if k == 0 {
            return Ok(cur);
        }
        if k <= ctx.cfg.base_k {
            return Ok(compose(&cur, &johnson_neutralize(&gc)?));
        }
        let (h, b) = twice_params(k);
        let params = ExtractParams {
            h,
            h0: h,
            b,
            mode: ctx.extract_mode(ExtractMode::Single),
            c_u: ctx.cfg.c_u,
            c_b: ctx.cfg.c_b,
            reduce: ctx.cfg.betweenness,
        };
        let seed = ctx.next_seed();
        let outcome = match extract(&gc, &params, seed, &mut |aux: &Graph| ctx.neutralize_aux(aux, k)) {
            Ok(o) => o,
            Err(SolveError::ExtractionFailed { .. }) => {
                cur = compose(&cur, &ctx.batch_fallback(&gc, h)?);
                continue;
            }
            Err(e) => return Err(e),
        };
        let step = match outcome {
            ExtractOutcome::Cycle(c) => return Err(c.into()),
            ExtractOutcome::Neutralized { phi, .. } => phi,
            ExtractOutcome::Remote { phi, u, .. } => {
                let g1 = reweight(&gc, &phi);
                compose(&phi, &neutralize_remote(&g1, &u, h, b, ctx)?)
            }
        };
        cur = compose(&cur, &step);
    }
}

/// A potential neutralizing `G_U` inside `g`, valid for `g`.
fn neutralize_remote(
    g: &Graph,
    u: &[usize],
    h: usize,
    b: usize,
    ctx: &mut Ctx,
) -> Result<Potential, SolveError> {
    assert!(b >= 1 && b <= h);
    let n = g.n();
    let k = g.k();
    let gu = g.restrict_negatives(u);
    let reach = negative_reach(g, u, h).reach;
    let in_reach = membership(n, &reach);
    let gh = gu.graph.induced(&in_reach);
    let gh_edges: Vec<usize> = gh.edge_of.iter().map(|&e| gu.edge_of[e]).collect();

    let psi_h = ctx.neutralize_aux(&gh.graph, k).map_err(|e| match e {
        SolveError::CycleFound(c) => SolveError::CycleFound(c.map_edges(&gh_edges, g)),
        other => other,
    })?;
    let ghr = reweight(&gh.graph, &psi_h);
    let ght = ghr.transpose();
    let opts = HopOptions { keep_layers: true, ..Default::default() };
    let table = hop_from_labels(&gu.graph, vec![0.0; n], h, &opts).expect("no detection requested");
    let half = (h / 2).max(1);
    let heads = gu.graph.heads_of(u);

    let r = reach.len();
    let mut idx = vec![usize::MAX; n];
    for (i, &v) in reach.iter().enumerate() {
        idx[v] = i;
    }
    let top = n + (b - 1) * r;
    let id = |layer: usize, v: usize| -> Option<usize> {
        if layer == 0 {
            Some(v)
        } else if layer == b {
            Some(top + v)
        } else {
            in_reach[v].then(|| n + (layer - 1) * r + idx[v])
        }
    };

    let attempts = 1 + ctx.cfg.retries;
    for attempt in 0..attempts {
        if attempt > 0 {
            stats::add_retry();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.next_seed());
        let pick = |rng: &mut ChaCha8Rng, d: usize| {
            let want = sample_size(ctx.cfg.sample_const, u.len(), n, d).min(u.len());
            let mut s: Vec<usize> = sample(rng, u.len(), want).into_iter().map(|i| u[i]).collect();
            s.sort_unstable();
            s
        };
        let x = pick(&mut rng, b);
        let u0 = pick(&mut rng, h);

        let mut phi = vec![0.0; n];
        for layer in 1..b {
            phi.extend(reach.iter().map(|&v| table.layer(layer)[v]));
        }
        phi.extend_from_slice(table.layer(h));
        let xprime = phi.len();
        phi.extend(x.iter().map(|&v| table.layer(half)[v]));

        let mut edges = Vec::new();
        let mut origin = Vec::new();
        let mut arc = |a: usize, c: usize, len: f64, o: EdgeOrigin| {
            if len.is_finite() {
                edges.push(Edge::new(a, c, len));
                origin.push(o);
            }
        };
        for (le, e) in gu.graph.edges().iter().enumerate() {
            let o = EdgeOrigin::Copy(gu.edge_of[le]);
            if e.len >= 0.0 {
                for layer in 0..=b {
                    if let (Some(p), Some(q)) = (id(layer, e.tail), id(layer, e.head)) {
                        arc(p, q, e.len, o);
                    }
                }
                if in_reach[e.tail] && !in_reach[e.head] {
                    arc(top + e.tail, e.head, e.len, o);
                }
            } else {
                for layer in 1..=b {
                    arc(id(layer - 1, e.tail).unwrap(), id(layer, e.head).unwrap(), e.len, o);
                }
            }
        }
        for v in 0..n {
            if in_reach[v] {
                for layer in 1..=b {
                    arc(id(layer - 1, v).unwrap(), id(layer, v).unwrap(), 0.0, EdgeOrigin::Connector);
                }
            } else {
                arc(v, top + v, 0.0, EdgeOrigin::Connector);
            }
        }
        for (t, &xv) in x.iter().enumerate() {
            let lx = gh.local_of[xv].expect("sample lies in the reach");
            let dh = table.layer(half)[xv];
            let back = |v: usize, d: f64| d - psi_h.get(v) + psi_h.get(lx);
            let to_x = dijkstra(&ght, &[lx])?.dist;
            for &uv in u {
                let lu = gh.local_of[uv].expect("U lies in the reach");
                arc(uv, xprime + t, back(lu, to_x[lu]).max(dh), EdgeOrigin::Shortcut);
            }
            let from_x = dijkstra(&ghr, &[lx])?.dist;
            for &v in &heads {
                let lv = gh.local_of[v].expect("heads lie in the reach");
                let d = from_x[lv] + psi_h.get(lv) - psi_h.get(lx);
                arc(xprime + t, top + v, d.max(table.layer(h)[v] - dh), EdgeOrigin::Shortcut);
            }
        }
        for &v in &u0 {
            arc(top + v, v, 0.0, EdgeOrigin::Connector);
        }
        stats::add_aux_edges(edges.len() as u64);

        let aux = Graph::build(phi.len(), edges);
        let phi = Potential::new(phi);
        let residual = reweight(&aux, &phi);
        let psi = match ctx.neutralize_aux(&residual, k) {
            Ok(p) => p,
            Err(SolveError::CycleFound(c)) => return Err(ctx.lift_cycle(&c, &origin, g).into()),
            Err(e) => return Err(e),
        };
        let big = compose(&phi, &psi);
        let sources: Vec<usize> = (0..n).collect();
        let targets: Vec<usize> = (top..top + n).collect();
        let d = johnson_through(&aux, &big, &sources, &targets);
        let out = Potential::from_distances(&d);
        if neutralizes(&gu.graph, &out) {
            return Ok(out);
        }
    }
    Err(SolveError::RetryBudgetExhausted { stage: "twice-recursive auxiliary graph", attempts })
}
