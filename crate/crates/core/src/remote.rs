//! Negative reach, betweenness reduction, and remote-set extraction.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{compose, hop_from_labels, johnson_neutralize, reweight, HopOptions, NegativeCycle, Potential};
use crate::error::SolveError;
use crate::graph::{Edge, EdgeOrigin, Graph};
use crate::params::sample_size;
use crate::stats;

/// A callback that neutralizes an auxiliary graph, reporting cycles in that
/// graph's own edge ids.
pub type Neutralizer<'a> = dyn FnMut(&Graph) -> Result<Potential, SolveError> + 'a;

/// The exact `h`-hop negative reach of `u` inside `G_U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachCertificate {
    pub u: Vec<usize>,
    pub h: usize,
    /// Sorted.
    pub reach: Vec<usize>,
    /// Edges of `G_U` with both ends in the reach.
    pub reach_edges: usize,
}

pub fn negative_reach(g: &Graph, u: &[usize], h: usize) -> ReachCertificate {
    let gu = g.restrict_negatives(u);
    let dist = reach_labels(&gu.graph, u, h);
    let mut reach: Vec<usize> = (0..g.n()).filter(|&v| dist[v] < 0.0).chain(u.iter().copied()).collect();
    reach.sort_unstable();
    reach.dedup();
    let inside = crate::graph::membership(g.n(), &reach);
    let reach_edges = gu.graph.edges().iter().filter(|e| inside[e.tail] && inside[e.head]).count();
    let mut u = u.to_vec();
    u.sort_unstable();
    ReachCertificate { u, h, reach, reach_edges }
}

/// Sign-exact `d^h(U, .)` with pruning; only `< 0` is meaningful.
fn reach_labels(g: &Graph, u: &[usize], h: usize) -> Vec<f64> {
    let bound = g.edges().iter().map(|e| -e.len).fold(0.0, f64::max);
    let mut init = vec![f64::INFINITY; g.n()];
    for &x in u {
        init[x] = 0.0;
    }
    if bound == 0.0 {
        return init;
    }
    let opts = HopOptions { prune: Some(bound), ..Default::default() };
    hop_from_labels(g, init, h, &opts).expect("no cycle detection when pruning").dist
}

/// Reach size of a single vertex for each budget in `budgets`, measured in
/// `g` with every negative edge available.
fn reach_profile(g: &Graph, x: usize, budgets: &[usize], bound: f64) -> Vec<usize> {
    let h = *budgets.last().unwrap();
    let mut init = vec![f64::INFINITY; g.n()];
    init[x] = 0.0;
    let opts = HopOptions { prune: Some(bound), keep_layers: true, ..Default::default() };
    let t = hop_from_labels(g, init, h, &opts).expect("no cycle detection when pruning");
    budgets
        .iter()
        .map(|&eta| 1 + t.layer(eta).iter().enumerate().filter(|&(v, &d)| d < 0.0 && v != x).count())
        .collect()
}

/// Potential valid for `g` after which few vertices lie `h`-hop negatively
/// between any pair (about `n / b` with high probability).
///
/// Builds `2h + 1` copies of the nonnegative part indexed `-h..=h`, with
/// negative edges moving one layer up, zero arcs from each copy of a vertex to
/// the next, and resets from layer `h` to layer `-h` for a sample `X` of
/// negative vertices. Layer potentials leave only the resets negative; the
/// residual goes to `neutralizer`, and the composed potential on layer 0 is
/// returned.
pub fn betweenness_reduce(
    g: &Graph,
    b: usize,
    h: usize,
    c_b: f64,
    seed: u64,
    neutralizer: &mut Neutralizer,
) -> Result<Potential, SolveError> {
    let n = g.n();
    let k = g.k();
    if k == 0 {
        return Ok(Potential::zeros(n));
    }
    let opts = HopOptions { keep_layers: true, ..Default::default() };
    let fwd = hop_from_labels(g, vec![0.0; n], h, &opts).expect("no detection");
    let bwd = hop_from_labels(&g.transpose(), vec![0.0; n], h, &opts).expect("no detection");

    let layers = 2 * h + 1;
    let id = |v: usize, i: isize| ((i + h as isize) as usize) * n + v;
    let mut phi = vec![0.0; layers * n];
    for i in -(h as isize)..=(h as isize) {
        for v in 0..n {
            phi[id(v, i)] = if i >= 0 {
                fwd.layer(i as usize)[v]
            } else {
                -bwd.layer((-i) as usize)[v]
            };
        }
    }

    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        for i in -(h as isize)..=(h as isize) {
            if e.len >= 0.0 {
                edges.push(Edge::new(id(e.tail, i), id(e.head, i), e.len));
                origin.push(EdgeOrigin::Copy(ei));
            } else if i < h as isize {
                edges.push(Edge::new(id(e.tail, i), id(e.head, i + 1), e.len));
                origin.push(EdgeOrigin::Copy(ei));
            }
        }
    }
    for v in 0..n {
        for i in -(h as isize)..(h as isize) {
            edges.push(Edge::new(id(v, i), id(v, i + 1), 0.0));
            origin.push(EdgeOrigin::Connector);
        }
    }
    let want = sample_size(c_b, b, n, 1).min(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let neg = g.neg_vertices();
    let first_reset = edges.len();
    for i in sample(&mut rng, k, want) {
        let x = neg[i];
        edges.push(Edge::new(id(x, h as isize), id(x, -(h as isize)), 0.0));
        origin.push(EdgeOrigin::Connector);
    }
    stats::add_aux_edges(edges.len() as u64);

    let aux = Graph::build(layers * n, edges);
    let phi = Potential::new(phi);
    let residual = reweight(&aux, &phi);
    debug_assert!(residual.negative_edges().all(|e| e >= first_reset));

    let psi = neutralizer(&residual).map_err(|err| match err {
        SolveError::CycleFound(c) => match lift_or_search(&c, &origin, g) {
            Ok(c) | Err(c) => SolveError::CycleFound(c),
        },
        other => other,
    })?;
    let base = id(0, 0);
    Ok(Potential::new(psi.values[base..base + n].to_vec()))
}

/// Lifts `c` to `target` through `origin`; when the cycle cannot be lifted,
/// looks for any negative cycle in `target` and returns it as `Err`.
pub(crate) fn lift_or_search(
    c: &NegativeCycle,
    origin: &[EdgeOrigin],
    target: &Graph,
) -> Result<NegativeCycle, NegativeCycle> {
    if let Some(l) = c.lift(|e| origin[e], target) {
        return Ok(l);
    }
    match crate::base::bellman_ford_all(target) {
        crate::base::DistanceResult::Cycle(c) => Err(c),
        _ => panic!("auxiliary graph has a negative cycle that its source graph lacks"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ExtractMode {
    /// One certificate at budget `h` with reach at most `n / b`.
    Single,
    /// Certificates at `h0, 2 h0, 4 h0, ..., h` with reach at most `n eta / h`.
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractParams {
    pub h: usize,
    pub h0: usize,
    pub b: usize,
    pub mode: ExtractMode,
    pub c_u: f64,
    pub c_b: f64,
    /// Run the betweenness reduction before ranking candidates.
    pub reduce: bool,
}

#[derive(Clone, Debug)]
pub enum ExtractOutcome {
    Cycle(NegativeCycle),
    /// `phi` neutralizes `count` of the negative edges and is valid.
    Neutralized { phi: Potential, count: usize },
    /// After reweighting by `phi`, `u` is remote with the given certificates.
    Remote { phi: Potential, u: Vec<usize>, certs: Vec<ReachCertificate> },
}

impl ExtractParams {
    pub(crate) fn budgets(&self) -> Vec<usize> {
        match self.mode {
            ExtractMode::Single => vec![self.h],
            ExtractMode::Graded => {
                let mut out = Vec::new();
                let mut eta = self.h0.max(1);
                while eta < self.h {
                    out.push(eta);
                    eta *= 2;
                }
                out.push(self.h);
                out
            }
        }
    }

    fn limit(&self, n: usize, eta: usize) -> usize {
        match self.mode {
            ExtractMode::Single => n / self.b.max(1),
            ExtractMode::Graded => n * eta / self.h.max(1),
        }
    }

    pub(crate) fn target(&self, k: usize) -> usize {
        (self.c_u * ((k * self.h0) as f64).sqrt()).ceil().max(1.0) as usize
    }
}

/// Either a negative cycle, a potential that already neutralizes the bulk of
/// the negative edges, or a large remote set of negative vertices.
pub fn extract(
    g: &Graph,
    p: &ExtractParams,
    seed: u64,
    neutralizer: &mut Neutralizer,
) -> Result<ExtractOutcome, SolveError> {
    assert!(p.h >= p.h0 && p.h0 >= 1);
    let k = g.k();
    let n = g.n();
    if k == 0 {
        return Ok(ExtractOutcome::Neutralized { phi: Potential::zeros(n), count: 0 });
    }
    let target = p.target(k);
    if k <= target {
        return Ok(match johnson_neutralize(g) {
            Ok(phi) => ExtractOutcome::Neutralized { phi, count: k },
            Err(c) => ExtractOutcome::Cycle(c),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reduce_seed = rand::Rng::gen(&mut rng);
    let phi_b = if p.reduce {
        match betweenness_reduce(g, p.b, p.h, p.c_b, reduce_seed, neutralizer) {
            Ok(phi) => phi,
            Err(SolveError::CycleFound(c)) => return Ok(ExtractOutcome::Cycle(c)),
            Err(e) => return Err(e),
        }
    } else {
        Potential::zeros(n)
    };
    let g1 = reweight(g, &phi_b);
    let k1 = g1.k();
    if k1 <= target {
        return Ok(match johnson_neutralize(&g1) {
            Ok(phi) => ExtractOutcome::Neutralized { phi: compose(&phi_b, &phi), count: k },
            Err(c) => ExtractOutcome::Cycle(c),
        });
    }

    // Rank a random pool of candidates by how far they reach on their own.
    let budgets = p.budgets();
    let bound = g1.edges().iter().map(|e| -e.len).fold(0.0, f64::max);
    let neg = g1.neg_vertices();
    let pool_size = (4 * target).min(k1);
    let pool: Vec<usize> = sample(&mut rng, k1, pool_size).into_iter().map(|i| neg[i]).collect();
    let mut ranked: Vec<(f64, usize)> = pool
        .iter()
        .map(|&x| {
            let prof = reach_profile(&g1, x, &budgets, bound);
            let score = budgets
                .iter()
                .zip(&prof)
                .map(|(&eta, &s)| s as f64 / p.limit(n, eta).max(1) as f64)
                .fold(0.0, f64::max);
            (score, x)
        })
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let order: Vec<usize> = ranked.into_iter().map(|(_, x)| x).collect();

    let certify = |len: usize| -> Option<Vec<ReachCertificate>> {
        let u = &order[..len];
        budgets
            .iter()
            .map(|&eta| {
                let c = negative_reach(&g1, u, eta);
                (c.reach.len() <= p.limit(n, eta)).then_some(c)
            })
            .collect()
    };

    let want = target.min(order.len());
    let (mut best, mut certs) = (0, None);
    if let Some(c) = certify(want) {
        best = want;
        certs = Some(c);
    } else {
        let (mut lo, mut hi) = (0, want);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            match certify(mid) {
                Some(c) => {
                    lo = mid;
                    certs = Some(c);
                }
                None => hi = mid,
            }
        }
        if lo > 0 && certs.is_some() {
            best = lo;
        }
    }
    let need = target.div_ceil(2);
    match certs {
        Some(certs) if best >= need => {
            let mut u = order[..best].to_vec();
            u.sort_unstable();
            Ok(ExtractOutcome::Remote { phi: phi_b, u, certs })
        }
        _ => Err(SolveError::ExtractionFailed { found: best, target }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::validate_potential;

    fn g1() -> Graph {
        Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, -2.0)]).unwrap()
    }

    #[test]
    fn empty_set_has_empty_reach() {
        assert!(negative_reach(&g1(), &[], 3).reach.is_empty());
    }

    #[test]
    fn single_negative_walk() {
        let c = negative_reach(&g1(), &[1], 1);
        assert_eq!(c.reach, vec![1, 2]);
        assert_eq!(c.reach_edges, 1);
    }

    #[test]
    fn reach_respects_budget() {
        let g = Graph::new(
            5,
            vec![
                Edge::new(0, 1, -1.0),
                Edge::new(1, 2, 0.0),
                Edge::new(2, 3, -1.0),
                Edge::new(3, 4, 5.0),
            ],
        )
        .unwrap();
        assert_eq!(negative_reach(&g, &[0], 1).reach, vec![0, 1, 2]);
        assert_eq!(negative_reach(&g, &[0, 2], 1).reach, vec![0, 1, 2, 3]);
        assert_eq!(negative_reach(&g, &[0, 2], 2).reach, vec![0, 1, 2, 3]);
    }

    #[test]
    fn betweenness_on_nonnegative_graph() {
        let g = Graph::new(2, vec![Edge::new(0, 1, 1.0)]).unwrap();
        let mut nz = |aux: &Graph| -> Result<Potential, SolveError> { Ok(johnson_neutralize(aux)?) };
        let phi = betweenness_reduce(&g, 2, 1, 4.0, 0, &mut nz).unwrap();
        assert_eq!(phi, Potential::zeros(2));
    }

    #[test]
    fn betweenness_is_valid() {
        let g = Graph::new(
            4,
            vec![
                Edge::new(0, 1, -3.0),
                Edge::new(1, 2, 2.0),
                Edge::new(2, 3, -1.0),
                Edge::new(3, 0, 4.0),
            ],
        )
        .unwrap();
        let mut nz = |aux: &Graph| -> Result<Potential, SolveError> { Ok(johnson_neutralize(aux)?) };
        let phi = betweenness_reduce(&g, 2, 2, 4.0, 3, &mut nz).unwrap();
        assert!(validate_potential(&g, &phi));
    }

    #[test]
    fn betweenness_reports_cycles_in_the_input() {
        let g = Graph::new(2, vec![Edge::new(0, 1, -3.0), Edge::new(1, 0, 1.0)]).unwrap();
        let mut nz = |aux: &Graph| -> Result<Potential, SolveError> { Ok(johnson_neutralize(aux)?) };
        match betweenness_reduce(&g, 1, 1, 4.0, 0, &mut nz) {
            Err(SolveError::CycleFound(c)) => assert!(c.verify(&g)),
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn one_negative_vertex_is_neutralized_directly() {
        let p = ExtractParams { h: 2, h0: 1, b: 2, mode: ExtractMode::Single, c_u: 1.0, c_b: 4.0, reduce: true };
        let mut nz = |aux: &Graph| -> Result<Potential, SolveError> { Ok(johnson_neutralize(aux)?) };
        match extract(&g1(), &p, 0, &mut nz).unwrap() {
            ExtractOutcome::Neutralized { count, phi } => {
                assert_eq!(count, 1);
                assert_eq!(reweight(&g1(), &phi).k(), 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
