//! Negative cycle witnesses.

use crate::graph::{EdgeOrigin, Graph};

/// A simple directed cycle of negative total length.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativeCycle {
    /// Edge ids in walk order.
    pub edges: Vec<usize>,
    /// Vertices in walk order, closed: the first vertex is repeated at the end.
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl NegativeCycle {
    fn from_simple(g: &Graph, edges: Vec<usize>) -> Self {
        let mut vertices: Vec<usize> = edges.iter().map(|&e| g.edge(e).tail).collect();
        vertices.push(vertices[0]);
        let length = edges.iter().map(|&e| g.edge(e).len).sum();
        NegativeCycle { edges, vertices, length }
    }

    /// Extracts a simple negative cycle from a closed walk of negative total
    /// length. Returns `None` if `walk` is not closed or not negative.
    pub fn from_closed_walk(g: &Graph, walk: &[usize]) -> Option<Self> {
        if walk.is_empty() || !is_closed(g, walk) {
            return None;
        }
        let total: f64 = walk.iter().map(|&e| g.edge(e).len).sum();
        if total >= 0.0 {
            return None;
        }
        let mut at: Vec<Option<usize>> = vec![None; g.n()];
        let mut stack: Vec<usize> = Vec::new();
        at[g.edge(walk[0]).tail] = Some(0);
        for &e in walk {
            stack.push(e);
            let cur = g.edge(e).head;
            match at[cur] {
                Some(p) => {
                    let sum: f64 = stack[p..].iter().map(|&x| g.edge(x).len).sum();
                    if sum < 0.0 {
                        return Some(Self::from_simple(g, stack[p..].to_vec()));
                    }
                    for &x in &stack[p + 1..] {
                        at[g.edge(x).tail] = None;
                    }
                    stack.truncate(p);
                }
                None => at[cur] = Some(stack.len()),
            }
        }
        None
    }

    /// Checks that this is a closed walk in `g` with the recorded negative
    /// length and consistent vertex list.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.edges.is_empty()
            || self.edges.iter().any(|&e| e >= g.m())
            || !is_closed(g, &self.edges)
            || self.vertices.len() != self.edges.len() + 1
        {
            return false;
        }
        let ok_vertices = self.edges.iter().zip(&self.vertices).all(|(&e, &v)| g.edge(e).tail == v)
            && self.vertices.first() == self.vertices.last();
        let len: f64 = self.edges.iter().map(|&e| g.edge(e).len).sum();
        ok_vertices && len < 0.0 && len == self.length
    }

    /// Carries a cycle of an auxiliary graph back to `target`. Connector arcs
    /// are dropped and copies are replaced by their source edges; fails if
    /// the cycle uses a shortcut arc.
    pub fn lift(&self, origin: impl Fn(usize) -> EdgeOrigin, target: &Graph) -> Option<Self> {
        let mut walk = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            match origin(e) {
                EdgeOrigin::Copy(p) => walk.push(p),
                EdgeOrigin::Connector => {}
                EdgeOrigin::Shortcut => return None,
            }
        }
        Self::from_closed_walk(target, &walk)
    }

    /// Maps edge ids through an injective edge map into a supergraph.
    pub fn map_edges(&self, edge_of: &[usize], target: &Graph) -> Self {
        Self::from_simple(target, self.edges.iter().map(|&e| edge_of[e]).collect())
    }
}

fn is_closed(g: &Graph, walk: &[usize]) -> bool {
    (0..walk.len()).all(|i| g.edge(walk[i]).head == g.edge(walk[(i + 1) % walk.len()]).tail)
}

/// Looks for a negative cycle among parent pointers (`parent[v]` is the id of
/// an edge entering `v`).
pub(crate) fn cycle_in_parents(g: &Graph, parent: &[Option<usize>]) -> Option<NegativeCycle> {
    let n = g.n();
    let mut state = vec![0u8; n];
    let mut path: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        path.clear();
        let mut v = start;
        loop {
            if state[v] == 2 {
                break;
            }
            if state[v] == 1 {
                // v is on the current path: the cycle runs from v back to v.
                let pos = path.iter().position(|&x| x == v).unwrap();
                let mut edges: Vec<usize> =
                    path[pos..].iter().map(|&x| parent[x].unwrap()).collect();
                edges.reverse();
                let c = NegativeCycle::from_simple(g, edges);
                if c.length < 0.0 {
                    return Some(c);
                }
                break;
            }
            state[v] = 1;
            path.push(v);
            match parent[v] {
                Some(e) => v = g.edge(e).tail,
                None => break,
            }
        }
        for &x in &path {
            state[x] = 2;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn two_cycle() -> Graph {
        Graph::new(3, vec![Edge::new(0, 1, -3.0), Edge::new(1, 0, 1.0), Edge::new(1, 2, 0.0)])
            .unwrap()
    }

    #[test]
    fn closed_walk_reduces_to_simple_cycle() {
        let g = Graph::new(
            3,
            vec![
                Edge::new(0, 1, 1.0),
                Edge::new(1, 0, 1.0),
                Edge::new(0, 2, -5.0),
                Edge::new(2, 0, 1.0),
            ],
        )
        .unwrap();
        let c = NegativeCycle::from_closed_walk(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.edges, vec![2, 3]);
        assert_eq!(c.vertices, vec![0, 2, 0]);
        assert_eq!(c.length, -4.0);
        assert!(c.verify(&g));
    }

    #[test]
    fn rejects_open_or_nonnegative_walks() {
        let g = two_cycle();
        assert!(NegativeCycle::from_closed_walk(&g, &[0]).is_none());
        let pos = Graph::new(2, vec![Edge::new(0, 1, 1.0), Edge::new(1, 0, 0.0)]).unwrap();
        assert!(NegativeCycle::from_closed_walk(&pos, &[0, 1]).is_none());
    }

    #[test]
    fn parent_cycle() {
        let g = two_cycle();
        let parent = vec![Some(1), Some(0), Some(2)];
        let c = cycle_in_parents(&g, &parent).unwrap();
        assert_eq!(c.length, -2.0);
        assert!(c.verify(&g));
    }

    #[test]
    fn lift_drops_connectors() {
        let g = two_cycle();
        let aux = Graph::new(
            3,
            vec![Edge::new(0, 1, -3.0), Edge::new(1, 2, 0.0), Edge::new(2, 0, 1.0)],
        )
        .unwrap();
        let c = NegativeCycle::from_closed_walk(&aux, &[0, 1, 2]).unwrap();
        let origin = |e: usize| match e {
            0 => EdgeOrigin::Copy(0),
            1 => EdgeOrigin::Connector,
            _ => EdgeOrigin::Copy(1),
        };
        let lifted = c.lift(origin, &g).unwrap();
        assert_eq!(lifted.edges, vec![0, 1]);
        assert!(c.lift(|_| EdgeOrigin::Shortcut, &g).is_none());
    }
}
