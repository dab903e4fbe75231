//! Brute-force references. Slow on purpose: these are what everything else
//! is checked against.

use super::cycle::{cycle_in_parents, NegativeCycle};
use super::dijkstra::{dijkstra, DistanceResult, ShortestPaths};
use crate::error::SolveError;
use crate::graph::Graph;
use crate::stats;

/// Bellman-Ford from one source. Only cycles reachable from `source` are
/// reported.
pub fn bellman_ford_oracle(g: &Graph, source: usize) -> DistanceResult {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[source] = 0.0;
    bellman_ford_from(g, dist)
}

/// Bellman-Ford with every vertex as a source at label 0, so the labels are
/// `d(V, v)` and any negative cycle in the graph is reported.
pub fn bellman_ford_all(g: &Graph) -> DistanceResult {
    bellman_ford_from(g, vec![0.0; g.n()])
}

fn bellman_ford_from(g: &Graph, mut dist: Vec<f64>) -> DistanceResult {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut relax = 0u64;
    let mut pass = 0;
    loop {
        pass += 1;
        let mut changed = false;
        for (i, e) in g.edges().iter().enumerate() {
            relax += 1;
            let nd = dist[e.tail] + e.len;
            if nd < dist[e.head] {
                dist[e.head] = nd;
                parent[e.head] = Some(i);
                changed = true;
            }
        }
        if !changed {
            stats::add_relaxations(relax);
            return DistanceResult::Distances(ShortestPaths { dist, parent });
        }
        if pass >= n {
            if let Some(c) = cycle_in_parents(g, &parent) {
                stats::add_relaxations(relax);
                return DistanceResult::Cycle(c);
            }
            assert!(pass < 4 * n + 4, "Bellman-Ford failed to expose a cycle");
        }
    }
}

/// Whether `g` contains a negative cycle anywhere.
pub fn has_negative_cycle(g: &Graph) -> bool {
    bellman_ford_all(g).is_cycle()
}

/// Proper `eta`-hop distance from `s` to `t`: the shortest walk using exactly
/// `eta` negative edges with pairwise distinct tails, where the pieces between
/// negative edges are shortest paths over nonnegative edges.
pub fn proper_hop_oracle(g: &Graph, s: usize, t: usize, eta: usize) -> Result<f64, SolveError> {
    const GUARD: usize = 14;
    if g.k() > GUARD {
        return Err(SolveError::TooLarge(g.k()));
    }
    let plus = g.nonnegative_part();
    let dplus = |from: usize| dijkstra(&plus.graph, &[from]).expect("nonnegative part").dist;
    if eta == 0 {
        return Ok(dplus(s)[t]);
    }
    if eta > g.k() {
        return Ok(f64::INFINITY);
    }

    let neg: Vec<usize> = g.negative_edges().collect();
    let tails = g.neg_vertices();
    let bit = |e: usize| 1usize << tails.binary_search(&g.edge(e).tail).unwrap();
    let from_s = dplus(s);
    let from_head: Vec<Vec<f64>> = neg.iter().map(|&e| dplus(g.edge(e).head)).collect();

    // best[mask][j]: shortest walk from s ending with negative edge neg[j],
    // whose negative tails are exactly `mask`.
    let q = neg.len();
    let mut best = vec![vec![f64::INFINITY; q]; 1 << tails.len()];
    for (j, &e) in neg.iter().enumerate() {
        best[bit(e)][j] = from_s[g.edge(e).tail] + g.edge(e).len;
    }
    let mut answer = f64::INFINITY;
    for mask in 1usize..(1 << tails.len()) {
        let hops = mask.count_ones() as usize;
        for j in 0..q {
            let cur = best[mask][j];
            if cur == f64::INFINITY {
                continue;
            }
            if hops == eta {
                answer = answer.min(cur + from_head[j][t]);
                continue;
            }
            for (j2, &e2) in neg.iter().enumerate() {
                if mask & bit(e2) != 0 {
                    continue;
                }
                let val = cur + from_head[j][g.edge(e2).tail] + g.edge(e2).len;
                let slot = &mut best[mask | bit(e2)][j2];
                if val < *slot {
                    *slot = val;
                }
            }
        }
    }
    Ok(answer)
}

/// All-pairs distances by repeated Bellman-Ford, or the first cycle found.
pub fn all_pairs_oracle(g: &Graph) -> Result<Vec<Vec<f64>>, NegativeCycle> {
    (0..g.n())
        .map(|s| match bellman_ford_oracle(g, s) {
            DistanceResult::Distances(sp) => Ok(sp.dist),
            DistanceResult::Cycle(c) => Err(c),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn two_cycle() {
        let g = Graph::new(2, vec![Edge::new(0, 1, -3.0), Edge::new(1, 0, 1.0)]).unwrap();
        match bellman_ford_oracle(&g, 0) {
            DistanceResult::Cycle(c) => {
                assert_eq!(c.length, -2.0);
                assert_eq!(c.vertices.len(), 3);
                assert!(c.verify(&g));
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn g1_distances() {
        let g = Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, -2.0)]).unwrap();
        assert_eq!(bellman_ford_oracle(&g, 0).distances().unwrap(), &[0.0, 4.0, 2.0]);
    }

    #[test]
    fn unreachable_cycle_is_invisible_from_source() {
        let g = Graph::new(3, vec![Edge::new(1, 2, -3.0), Edge::new(2, 1, 1.0)]).unwrap();
        assert!(!bellman_ford_oracle(&g, 0).is_cycle());
        assert!(has_negative_cycle(&g));
    }

    #[test]
    fn proper_hops() {
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, 2.0), Edge::new(1, 2, -5.0), Edge::new(2, 3, 1.0)],
        )
        .unwrap();
        assert_eq!(proper_hop_oracle(&g, 0, 3, 0).unwrap(), f64::INFINITY);
        assert_eq!(proper_hop_oracle(&g, 0, 3, 1).unwrap(), -2.0);
        assert_eq!(proper_hop_oracle(&g, 0, 3, 2).unwrap(), f64::INFINITY);
    }
}
