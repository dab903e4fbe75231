//! Hop-bounded distances.
//!
//! Round `i` extends the round `i-1` labels by one hop edge out of every vertex
//! whose label changed in round `i-1`, then closes the result under the
//! remaining (nonnegative) edges with one Dijkstra pass. A round that changes
//! nothing ends the run early, since every later round would repeat it.

use super::cycle::{cycle_in_parents, NegativeCycle};
use super::dijkstra::settle;
use super::oracle::bellman_ford_all;
use crate::graph::Graph;
use crate::stats;

#[derive(Clone, Copy, Debug, Default)]
pub struct HopOptions<'a> {
    /// Edges that count as hops. Defaults to the negative edges of the graph.
    /// Every other edge must be nonnegative.
    pub hop_mask: Option<&'a [bool]>,
    /// Keep the label vector of every round.
    pub keep_layers: bool,
    /// When the budget covers every hop edge, run one extra round and report a
    /// negative cycle if it still improves something.
    pub detect: bool,
    /// Per-hop lower bound `b` on hop lengths (`len >= -b`). Labels that can
    /// no longer become negative within the remaining budget are dropped, so
    /// only the sign of the result is meaningful. Ignored when `detect` is set.
    pub prune: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopDistanceTable {
    pub h: usize,
    /// Labels after the last round that was run.
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
    /// `layers[i]` is the label vector after round `i`, if layers were kept.
    pub layers: Vec<Vec<f64>>,
    /// Number of hop rounds actually run.
    pub rounds: usize,
}

impl HopDistanceTable {
    /// Labels after `i` hops. Rounds past the stabilization point repeat the
    /// last stored layer.
    pub fn layer(&self, i: usize) -> &[f64] {
        if self.layers.is_empty() {
            assert!(i >= self.rounds, "layers were not kept");
            return &self.dist;
        }
        &self.layers[i.min(self.layers.len() - 1)]
    }
}

pub type HopRun = Result<HopDistanceTable, NegativeCycle>;

/// `d^h(S, v)` for every `v`, or a negative cycle when `h` is at least the
/// number of negative edges and the labels fail to stabilize.
pub fn hop_sssp(g: &Graph, sources: &[usize], h: usize) -> HopRun {
    let mut init = vec![f64::INFINITY; g.n()];
    for &s in sources {
        init[s] = 0.0;
    }
    hop_from_labels(g, init, h, &HopOptions { detect: true, ..Default::default() })
}

/// Hop-bounded distances from arbitrary initial labels.
pub fn hop_from_labels(g: &Graph, init: Vec<f64>, h: usize, opts: &HopOptions) -> HopRun {
    let owned;
    let mask: &[bool] = match opts.hop_mask {
        Some(m) => m,
        None => {
            owned = g.negative_edge_mask();
            &owned
        }
    };
    let k = mask.iter().filter(|&&b| b).count();
    let detect = opts.detect && h >= k;
    let prune = if opts.detect { None } else { opts.prune };
    let last = if detect { k + 1 } else { h };
    let cap = |i: usize| prune.map(|b| (h.saturating_sub(i)) as f64 * b);

    let n = g.n();
    let mut dist = init;
    let mut parent = vec![None; n];
    if let Some(c) = cap(0) {
        for d in dist.iter_mut().filter(|d| **d >= c) {
            *d = f64::INFINITY;
        }
    }
    let seeds: Vec<usize> = (0..n).filter(|&v| dist[v].is_finite()).collect();
    let mut stamp = vec![0usize; n];
    let mut changed = Vec::new();
    settle(g, &mut dist, &mut parent, &seeds, |e| mask[e], cap(0), |_| {});
    changed.extend((0..n).filter(|&v| dist[v].is_finite()));

    let mut layers = Vec::new();
    if opts.keep_layers {
        layers.push(dist.clone());
    }
    let mut rounds = 0;
    let mut candidates = Vec::new();
    let mut unchecked_work = 0usize;
    for i in 1..=last {
        if changed.is_empty() {
            break;
        }
        rounds = i;
        candidates.clear();
        let mut relax = 0u64;
        for &u in &changed {
            for &e in g.out_edges(u) {
                if mask[e] {
                    relax += 1;
                    candidates.push((e, dist[u] + g.edge(e).len));
                }
            }
        }
        stats::add_relaxations(relax);

        let cap_i = cap(i).unwrap_or(f64::INFINITY);
        let mut next = Vec::new();
        for &(e, val) in &candidates {
            let v = g.edge(e).head;
            if val < dist[v] && val < cap_i {
                dist[v] = val;
                parent[v] = Some(e);
                if stamp[v] != i {
                    stamp[v] = i;
                    next.push(v);
                }
            }
        }
        let seeds = next.clone();
        settle(g, &mut dist, &mut parent, &seeds, |e| mask[e], cap(i), |v| {
            if stamp[v] != i {
                stamp[v] = i;
                next.push(v);
            }
        });
        changed = next;
        if opts.keep_layers {
            layers.push(dist.clone());
        }
        if detect && i == k + 1 && !changed.is_empty() {
            return Err(extract_cycle(g, mask, dist, parent, changed));
        }
        if detect {
            unchecked_work += relax as usize + changed.len();
            if unchecked_work >= n {
                unchecked_work = 0;
                if let Some(c) = cycle_in_parents(g, &parent) {
                    return Err(c);
                }
            }
        }
    }
    Ok(HopDistanceTable { h, dist, parent, layers, rounds })
}

/// Keeps running rounds until the parent pointers close a cycle, which is
/// always negative. Falls back to a Bellman-Ford pass over the whole graph.
fn extract_cycle(
    g: &Graph,
    mask: &[bool],
    mut dist: Vec<f64>,
    mut parent: Vec<Option<usize>>,
    mut changed: Vec<usize>,
) -> NegativeCycle {
    let n = g.n();
    let mut stamp = vec![false; n];
    for _ in 0..=2 * n + 2 {
        if let Some(c) = cycle_in_parents(g, &parent) {
            return c;
        }
        if changed.is_empty() {
            break;
        }
        let candidates: Vec<(usize, f64)> = changed
            .iter()
            .flat_map(|&u| g.out_edges(u).iter().map(move |&e| (u, e)))
            .filter(|&(_, e)| mask[e])
            .map(|(u, e)| (e, dist[u] + g.edge(e).len))
            .collect();
        stamp.iter_mut().for_each(|s| *s = false);
        let mut next = Vec::new();
        for (e, val) in candidates {
            let v = g.edge(e).head;
            if val < dist[v] {
                dist[v] = val;
                parent[v] = Some(e);
                if !stamp[v] {
                    stamp[v] = true;
                    next.push(v);
                }
            }
        }
        let seeds = next.clone();
        settle(g, &mut dist, &mut parent, &seeds, |e| mask[e], None, |v| {
            if !stamp[v] {
                stamp[v] = true;
                next.push(v);
            }
        });
        changed = next;
    }
    match bellman_ford_all(g) {
        super::DistanceResult::Cycle(c) => c,
        _ => panic!("hop rounds failed to stabilize on a graph without negative cycles"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn sxt() -> Graph {
        Graph::new(3, vec![Edge::new(0, 1, 5.0), Edge::new(1, 2, -3.0)]).unwrap()
    }

    #[test]
    fn single_hop() {
        let g = sxt();
        let t0 = hop_from_labels(&g, vec![0.0, f64::INFINITY, f64::INFINITY], 0, &Default::default())
            .unwrap();
        assert!(t0.dist[2].is_infinite());
        let t1 = hop_sssp(&g, &[0], 1).unwrap();
        assert_eq!(t1.dist, vec![0.0, 5.0, 2.0]);
        assert_eq!(t1.parent[2], Some(1));
    }

    #[test]
    fn layers_are_monotone() {
        let g = Graph::new(
            4,
            vec![
                Edge::new(0, 1, -1.0),
                Edge::new(1, 2, 2.0),
                Edge::new(2, 3, -4.0),
                Edge::new(0, 3, 0.0),
            ],
        )
        .unwrap();
        let opts = HopOptions { keep_layers: true, ..Default::default() };
        let t = hop_from_labels(&g, vec![0.0; 4], 3, &opts).unwrap();
        assert_eq!(t.layer(0), &[0.0, 0.0, 0.0, 0.0]);
        assert_eq!(t.layer(1), &[0.0, -1.0, 0.0, -4.0]);
        assert_eq!(t.layer(2), &[0.0, -1.0, 0.0, -4.0]);
        assert_eq!(t.layer(9), t.layer(1));
    }

    #[test]
    fn two_hops_need_two_rounds() {
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, -1.0), Edge::new(1, 2, 2.0), Edge::new(2, 3, -4.0)],
        )
        .unwrap();
        assert_eq!(hop_sssp(&g, &[0], 1).unwrap().dist[3], f64::INFINITY);
        assert_eq!(hop_sssp(&g, &[0], 2).unwrap().dist[3], -3.0);
    }

    #[test]
    fn detects_cycle() {
        let g = Graph::new(
            3,
            vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, -3.0), Edge::new(2, 1, 1.0)],
        )
        .unwrap();
        let c = hop_sssp(&g, &[0], 5).unwrap_err();
        assert!(c.verify(&g));
        assert_eq!(c.length, -2.0);
    }

    #[test]
    fn pruning_keeps_signs() {
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, -2.0), Edge::new(1, 2, 1.0), Edge::new(2, 3, 5.0)],
        )
        .unwrap();
        let opts = HopOptions { prune: Some(2.0), ..Default::default() };
        let init = vec![0.0, f64::INFINITY, f64::INFINITY, f64::INFINITY];
        let t = hop_from_labels(&g, init, 1, &opts).unwrap();
        assert!(t.dist[1] < 0.0 && t.dist[2] < 0.0);
        assert!(t.dist[3].is_infinite());
    }
}
