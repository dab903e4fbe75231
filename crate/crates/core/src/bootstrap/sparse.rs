//! Sparse wrapper: layer the graph, then hand the sparsifier to the dense
//! solver.

use super::dense::dense_canonical;
use crate::base::Potential;
use crate::error::SolveError;
use crate::graph::Graph;
use crate::layered::neutralize_restriction;
use crate::params::sparse_h;
use crate::solver::{Algorithm, AuxSolver, Ctx, SolverConfig};

pub fn solve_sparse(g: &Graph, cfg: &SolverConfig) -> Result<Potential, SolveError> {
    let cfg = SolverConfig { algorithm: Algorithm::Sparse, ..cfg.clone() };
    crate::solver::neutralize(g, &cfg)
}

pub(crate) fn sparse_canonical(g: &Graph, ctx: &mut Ctx) -> Result<Potential, SolveError> {
    let h = ctx.cfg.forced_h.unwrap_or_else(|| sparse_h(g.k(), g.m()));
    if !layers_pay_off(g, h, ctx) {
        return dense_canonical(g, ctx);
    }
    neutralize_restriction(g, g.neg_vertices(), h, 1, ctx, AuxSolver::Dense)
}

/// Whether an `h`-layer sparsifier would differ from the input.
pub(crate) fn layers_pay_off(g: &Graph, h: usize, ctx: &Ctx) -> bool {
    h > 1 && (h as f64) >= ctx.cfg.c0 * (g.n().max(2) as f64).ln()
}
