//! Top-level solvers and the shared recursion context.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::{
    bellman_ford_oracle, dijkstra, johnson_neutralize, neutralizes, reweight, DistanceResult,
    NegativeCycle, Potential,
};
use crate::error::SolveError;
use crate::graph::{preprocess, EdgeOrigin, Graph};
use crate::params::{self, Variant};
use crate::remote::{lift_or_search, ExtractMode};
use crate::stats;
use crate::{bootstrap, layered};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    BellmanFord,
    Recursive,
    RecursiveImproved,
    /// Dense solver; recursive calls pick dense or sparse by density.
    Dense,
    /// Sparse wrapper around the dense solver.
    Sparse,
    TwiceRecursive,
    /// Sparse wrapper around the twice-recursive solver.
    TwiceSparse,
    /// Twice-recursive, with its sparse wrapper below the density threshold.
    Auto,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::BellmanFord,
        Algorithm::Recursive,
        Algorithm::RecursiveImproved,
        Algorithm::Dense,
        Algorithm::Sparse,
        Algorithm::TwiceRecursive,
        Algorithm::TwiceSparse,
        Algorithm::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BellmanFord => "bellman-ford",
            Algorithm::Recursive => "recursive",
            Algorithm::RecursiveImproved => "recursive-improved",
            Algorithm::Dense => "dense",
            Algorithm::Sparse => "sparse",
            Algorithm::TwiceRecursive => "twice-recursive",
            Algorithm::TwiceSparse => "twice-sparse",
            Algorithm::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Extra attempts for a randomized construction that fails verification.
    pub retries: usize,
    /// Instances with at most this many negative vertices go straight to
    /// Johnson.
    pub base_k: usize,
    /// Sampling constant for reset arcs.
    pub sample_const: f64,
    /// Layered constructions with fewer than `c0 ln n` layers collapse to
    /// the identity.
    pub c0: f64,
    /// Remote set size constant.
    pub c_u: f64,
    /// Betweenness sample constant.
    pub c_b: f64,
    /// Run the betweenness reduction inside remote-set extraction.
    pub betweenness: bool,
    /// Overrides the extraction mode the algorithm would pick.
    pub extract_mode: Option<ExtractMode>,
    /// Auxiliary graphs deeper than this are solved with Johnson.
    pub max_depth: usize,
    /// Overrides the layer count chosen by the sparse wrappers.
    pub forced_h: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Auto,
            seed: 0,
            retries: 3,
            base_k: 8,
            sample_const: 4.0,
            c0: 1.0,
            c_u: 1.0,
            c_b: 4.0,
            betweenness: true,
            extract_mode: None,
            max_depth: 4,
            forced_h: None,
        }
    }
}

impl SolverConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        SolverConfig { algorithm, ..Default::default() }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Distances { source: usize, dist: Vec<f64>, parent: Vec<Option<usize>> },
    Cycle(NegativeCycle),
}

impl Solution {
    pub fn distances(&self) -> Option<&[f64]> {
        match self {
            Solution::Distances { dist, .. } => Some(dist),
            Solution::Cycle(_) => None,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Solution::Cycle(_))
    }
}

/// Distances from `source`, or a negative cycle anywhere in `g`. Cycles not
/// reachable from the source are reported too, except by Bellman-Ford.
pub fn solve(g: &Graph, source: usize, cfg: &SolverConfig) -> Result<Solution, SolveError> {
    assert!(source < g.n(), "source out of range");
    if cfg.algorithm == Algorithm::BellmanFord {
        return Ok(match bellman_ford_oracle(g, source) {
            DistanceResult::Distances(sp) => {
                Solution::Distances { source, dist: sp.dist, parent: sp.parent }
            }
            DistanceResult::Cycle(c) => Solution::Cycle(c),
        });
    }
    let phi = match neutralize(g, cfg) {
        Ok(phi) => phi,
        Err(SolveError::CycleFound(c)) => return Ok(Solution::Cycle(c)),
        Err(e) => return Err(e),
    };
    let gp = reweight(g, &phi);
    let sp = dijkstra(&gp, &[source])?;
    let dist = sp
        .dist
        .iter()
        .enumerate()
        .map(|(v, &d)| if d.is_finite() { d - phi.get(source) + phi.get(v) } else { d })
        .collect();
    Ok(Solution::Distances { source, dist, parent: sp.parent })
}

/// A potential under which every edge of `g` is nonnegative, or
/// `CycleFound` with a negative cycle of `g`.
pub fn neutralize(g: &Graph, cfg: &SolverConfig) -> Result<Potential, SolveError> {
    if cfg.algorithm == Algorithm::BellmanFord {
        return match crate::base::bellman_ford_all(g) {
            DistanceResult::Distances(sp) => Ok(Potential::new(sp.dist)),
            DistanceResult::Cycle(c) => Err(c.into()),
        };
    }
    let (canon, map) = preprocess(g)?;
    let mut ctx = Ctx::new(cfg);
    match ctx.neutralize_canonical(&canon) {
        Ok(phi_c) => {
            let phi = phi_c.pull(&map.forward);
            if !neutralizes(g, &phi) {
                return Err(SolveError::Internal("potential does not neutralize the input".into()));
            }
            Ok(phi)
        }
        Err(SolveError::CycleFound(c)) => {
            let lifted = match lift_or_search(&c, &map.edge_origin, g) {
                Ok(c) | Err(c) => c,
            };
            assert!(lifted.verify(g), "lifted cycle is not a negative cycle of the input");
            Err(lifted.into())
        }
        Err(e) => Err(e),
    }
}

/// How an auxiliary graph is solved: through the configured dispatch, or
/// by a fixed solver regardless of its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum AuxSolver {
    Dispatch,
    Dense,
    Twice,
}

/// Recursion state shared by every solver: configuration, the seed stream,
/// and the current depth of auxiliary-graph recursion.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a SolverConfig,
    rng: ChaCha8Rng,
    pub depth: usize,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SolverConfig) -> Self {
        Ctx { cfg, rng: ChaCha8Rng::seed_from_u64(cfg.seed), depth: 0 }
    }

    pub fn next_seed(&mut self) -> u64 {
        self.rng.gen()
    }

    /// Dispatches on the configured algorithm. `g` must be canonical.
    pub fn neutralize_canonical(&mut self, g: &Graph) -> Result<Potential, SolveError> {
        if g.k() == 0 {
            return Ok(Potential::zeros(g.n()));
        }
        if g.k() <= self.cfg.base_k {
            return Ok(johnson_neutralize(g)?);
        }
        match self.cfg.algorithm {
            Algorithm::BellmanFord => Ok(johnson_neutralize(g)?),
            Algorithm::Recursive => layered::recursive_canonical(g, Variant::Classic, self),
            Algorithm::RecursiveImproved => {
                layered::recursive_canonical(g, Variant::Improved, self)
            }
            Algorithm::Dense | Algorithm::Sparse => {
                let sparse = if self.depth == 0 {
                    self.cfg.algorithm == Algorithm::Sparse
                } else {
                    is_sparse_for_dense(g)
                };
                if sparse {
                    bootstrap::sparse::sparse_canonical(g, self)
                } else {
                    bootstrap::dense::dense_canonical(g, self)
                }
            }
            Algorithm::TwiceRecursive | Algorithm::TwiceSparse | Algorithm::Auto => {
                let sparse = match self.cfg.algorithm {
                    Algorithm::TwiceSparse if self.depth == 0 => true,
                    Algorithm::TwiceRecursive if self.depth == 0 => false,
                    _ => is_sparse_for_twice(g),
                };
                if sparse {
                    bootstrap::twice::twice_sparse_canonical(g, self)
                } else {
                    bootstrap::twice::twice_canonical(g, self)
                }
            }
        }
    }

    /// Neutralizes an auxiliary graph built inside a solver for an instance
    /// with `parent_k` negative vertices. Small or non-shrinking instances,
    /// and anything past the depth limit, go to Johnson; everything else
    /// recurses. Cycles come back in `aux` edge ids.
    pub fn neutralize_aux(&mut self, aux: &Graph, parent_k: usize) -> Result<Potential, SolveError> {
        self.neutralize_aux_with(aux, parent_k, AuxSolver::Dispatch)
    }

    pub fn neutralize_aux_with(
        &mut self,
        aux: &Graph,
        parent_k: usize,
        solver: AuxSolver,
    ) -> Result<Potential, SolveError> {
        if aux.k() == 0 {
            return Ok(Potential::zeros(aux.n()));
        }
        let (canon, map) = preprocess(aux).map_err(|e| SolveError::Internal(e.to_string()))?;
        let k = canon.k();
        let shrinks = k < parent_k || solver != AuxSolver::Dispatch;
        let res = if k <= self.cfg.base_k || !shrinks || self.depth >= self.cfg.max_depth {
            johnson_neutralize(&canon).map_err(SolveError::from)
        } else {
            self.depth += 1;
            stats::note_depth(self.depth as u64);
            let r = match solver {
                AuxSolver::Dispatch => self.neutralize_canonical(&canon),
                AuxSolver::Dense => bootstrap::dense::dense_canonical(&canon, self),
                AuxSolver::Twice => bootstrap::twice::twice_canonical(&canon, self),
            };
            self.depth -= 1;
            r
        };
        match res {
            Ok(phi) => {
                let phi = phi.pull(&map.forward);
                if !neutralizes(aux, &phi) {
                    return Err(SolveError::Internal("auxiliary potential is not neutralizing".into()));
                }
                Ok(phi)
            }
            Err(SolveError::CycleFound(c)) => Err(self.lift_cycle(&c, &map.edge_origin, aux).into()),
            Err(e) => Err(e),
        }
    }

    pub fn lift_cycle(&self, c: &NegativeCycle, origin: &[EdgeOrigin], target: &Graph) -> NegativeCycle {
        match lift_or_search(c, origin, target) {
            Ok(c) | Err(c) => c,
        }
    }

    /// Johnson on a random batch of about `sqrt(k h0)` negative vertices.
    pub fn batch_fallback(&mut self, g: &Graph, h0: usize) -> Result<Potential, SolveError> {
        let k = g.k();
        let size = (((k * h0.max(1)) as f64).sqrt().ceil() as usize).clamp(1, k);
        let mut rng = ChaCha8Rng::seed_from_u64(self.next_seed());
        let neg = g.neg_vertices();
        let batch: Vec<usize> = sample(&mut rng, k, size).into_iter().map(|i| neg[i]).collect();
        let gb = g.restrict_negatives(&batch);
        johnson_neutralize(&gb.graph).map_err(|c| SolveError::CycleFound(c.map_edges(&gb.edge_of, g)))
    }

    /// The configured extraction mode, or `default`.
    pub fn extract_mode(&self, default: ExtractMode) -> ExtractMode {
        self.cfg.extract_mode.unwrap_or(default)
    }
}

fn is_sparse_for_dense(g: &Graph) -> bool {
    (g.m() as f64) < (g.k() as f64).powf(params::exp_dense_threshold())
}

fn is_sparse_for_twice(g: &Graph) -> bool {
    (g.m() as f64) < (g.k() as f64).powf(params::gamma())
}
