//! The dense bootstrapping solver.

use super::{bootstrap_full, seed_estimates_via_neutralized_subgraph, BootstrapConfig, LevelFamily};
use crate::base::{compose, hop_from_labels, johnson_neutralize, neutralizes, reweight, HopOptions, Potential};
use crate::error::SolveError;
use crate::graph::Graph;
use crate::layered::neutralize_restriction;
use crate::params::dense_params;
use crate::remote::{extract, lift_or_search, ExtractMode, ExtractOutcome, ExtractParams};
use crate::solver::{Algorithm, AuxSolver, Ctx, SolverConfig};

/// Neutralizes `g` with the dense solver at the top level, or returns the
/// cycle it finds.
pub fn solve_dense(g: &Graph, cfg: &SolverConfig) -> Result<Potential, SolveError> {
    let cfg = SolverConfig { algorithm: Algorithm::Dense, ..cfg.clone() };
    crate::solver::neutralize(g, &cfg)
}

pub(crate) fn dense_canonical(g: &Graph, ctx: &mut Ctx) -> Result<Potential, SolveError> {
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
        let (h, h0) = dense_params(k);
        let step = dense_step(&gc, h, h0, ctx)?;
        cur = compose(&cur, &step);
    }
}

fn dense_step(g: &Graph, h: usize, h0: usize, ctx: &mut Ctx) -> Result<Potential, SolveError> {
    let mode = ctx.extract_mode(ExtractMode::Graded);
    let params = ExtractParams {
        h,
        h0,
        b: h,
        mode,
        c_u: ctx.cfg.c_u,
        c_b: ctx.cfg.c_b,
        reduce: ctx.cfg.betweenness,
    };
    let seed = ctx.next_seed();
    let k = g.k();
    let outcome = match extract(g, &params, seed, &mut |aux: &Graph| ctx.neutralize_aux(aux, k)) {
        Ok(o) => o,
        Err(SolveError::ExtractionFailed { .. }) => return ctx.batch_fallback(g, h0),
        Err(e) => return Err(e),
    };
    let (phi1, u) = match outcome {
        ExtractOutcome::Cycle(c) => return Err(c.into()),
        ExtractOutcome::Neutralized { phi, .. } => return Ok(phi),
        ExtractOutcome::Remote { phi, u, .. } => (phi, u),
    };
    let g1 = reweight(g, &phi1);
    let cfg = BootstrapConfig::new(h, h0, ctx.cfg.sample_const);
    let psi = neutralize_remote(&g1, &u, cfg, ctx)?;
    Ok(compose(&phi1, &psi))
}

/// A potential neutralizing `G_U` inside `g` through the level-`L` reducer.
pub(crate) fn neutralize_remote(
    g: &Graph,
    u: &[usize],
    cfg: BootstrapConfig,
    ctx: &mut Ctx,
) -> Result<Potential, SolveError> {
    let fam = LevelFamily::new(g, u, cfg);

    let top = fam.level(cfg.i1);
    let u_top = top.sub.local_vertices(&fam.u);
    let phi_c = neutralize_restriction(&top.sub.graph, &u_top, cfg.h0, 1, ctx, AuxSolver::Dispatch)
        .map_err(|e| match e {
            SolveError::CycleFound(c) => {
                let edge_of: Vec<usize> =
                    (0..top.sub.graph.m()).map(|le| fam.parent_edge(cfg.i1, le)).collect();
                SolveError::CycleFound(c.map_edges(&edge_of, g))
            }
            other => other,
        })?;

    let mut seeds = Vec::new();
    for j in cfg.i0 + 1..=cfg.i1 {
        let lj = fam.level(j);
        let local: Vec<usize> = lj.sub.vertex_of.iter().map(|&v| top.local(v)).collect();
        let phi_j = phi_c.pull(&local);
        seeds.push(seed_estimates_via_neutralized_subgraph(&fam, j, &phi_j, cfg.c, ctx.next_seed())?);
    }
    let red = bootstrap_full(&fam, seeds, ctx.next_seed())?;

    let hr = red.reweighted();
    let mut init = vec![f64::INFINITY; hr.n()];
    for &b in &red.embed {
        init[b] = 0.0;
    }
    let budget = hr.negative_edges().count();
    let opts = HopOptions { detect: true, ..Default::default() };
    let table = match hop_from_labels(&hr, init, budget, &opts) {
        Ok(t) => t,
        Err(c) => {
            return Err(match lift_or_search(&c, &red.origin, g) {
                Ok(c) | Err(c) => c,
            }
            .into())
        }
    };
    let phi = Potential::new(red.embed.iter().map(|&b| table.dist[b]).collect());
    if !neutralizes(&fam.gu.graph, &phi) {
        return Err(SolveError::NotNeutralized);
    }
    Ok(phi)
}
