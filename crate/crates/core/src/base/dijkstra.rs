//! Dijkstra with multi-source initial labels.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::cycle::NegativeCycle;
use crate::error::SolveError;
use crate::graph::Graph;
use crate::stats;

/// Distances plus the id of the edge each vertex was last reached by.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestPaths {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Edge ids of the parent walk ending at `v`, in walk order.
    pub fn path_to(&self, g: &Graph, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(e) = self.parent[v] {
            out.push(e);
            v = g.edge(e).tail;
            if out.len() > g.n() {
                break;
            }
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DistanceResult {
    Distances(ShortestPaths),
    Cycle(NegativeCycle),
}

impl DistanceResult {
    pub fn distances(&self) -> Option<&[f64]> {
        match self {
            DistanceResult::Distances(sp) => Some(&sp.dist),
            DistanceResult::Cycle(_) => None,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, DistanceResult::Cycle(_))
    }
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) struct Key(pub f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Single or multi-source distances in a graph with nonnegative lengths.
pub fn dijkstra(g: &Graph, sources: &[usize]) -> Result<ShortestPaths, SolveError> {
    if let Some(e) = g.negative_edges().next() {
        return Err(SolveError::NegativeEdgeEncountered(e));
    }
    let mut dist = vec![f64::INFINITY; g.n()];
    let mut parent = vec![None; g.n()];
    for &s in sources {
        dist[s] = 0.0;
    }
    settle(g, &mut dist, &mut parent, sources, |_| false, None, |_| {});
    Ok(ShortestPaths { dist, parent })
}

/// Propagates labels from `seeds` along edges not rejected by `skip`, which
/// must all be nonnegative. Labels may start at arbitrary values. Labels at or
/// above `cap` are treated as unreached. `on_improve` sees every vertex whose
/// label decreased.
pub(crate) fn settle(
    g: &Graph,
    dist: &mut [f64],
    parent: &mut [Option<usize>],
    seeds: &[usize],
    skip: impl Fn(usize) -> bool,
    cap: Option<f64>,
    mut on_improve: impl FnMut(usize),
) {
    let cap = cap.unwrap_or(f64::INFINITY);
    let mut heap: BinaryHeap<Reverse<(Key, usize)>> =
        seeds.iter().filter(|&&s| dist[s] < cap).map(|&s| Reverse((Key(dist[s]), s))).collect();
    let (mut pops, mut relax) = (0u64, 0u64);
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        pops += 1;
        for &e in g.out_edges(u) {
            if skip(e) {
                continue;
            }
            relax += 1;
            let edge = g.edge(e);
            debug_assert!(edge.len >= 0.0, "edge {e} is negative");
            let nd = d + edge.len;
            if nd < dist[edge.head] && nd < cap {
                dist[edge.head] = nd;
                parent[edge.head] = Some(e);
                on_improve(edge.head);
                heap.push(Reverse((Key(nd), edge.head)));
            }
        }
    }
    stats::add_pops(pops);
    stats::add_relaxations(relax);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn path_distances() {
        let g = Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, 1.0)]).unwrap();
        let sp = dijkstra(&g, &[0]).unwrap();
        assert_eq!(sp.dist, vec![0.0, 4.0, 5.0]);
        assert_eq!(sp.path_to(&g, 2), vec![0, 1]);
    }

    #[test]
    fn all_sources_give_zero() {
        let g = Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, 1.0)]).unwrap();
        assert_eq!(dijkstra(&g, &[0, 1, 2]).unwrap().dist, vec![0.0; 3]);
    }

    #[test]
    fn rejects_negative_edges() {
        let g = Graph::new(2, vec![Edge::new(0, 1, -1.0)]).unwrap();
        assert!(matches!(dijkstra(&g, &[0]), Err(SolveError::NegativeEdgeEncountered(0))));
    }

    #[test]
    fn unreachable_is_infinite() {
        let g = Graph::new(3, vec![Edge::new(1, 2, 1.0)]).unwrap();
        let sp = dijkstra(&g, &[0]).unwrap();
        assert!(sp.dist[1].is_infinite() && sp.dist[2].is_infinite());
    }
}
