//! Reduction to canonical form.
//!
//! After [`preprocess`], every negative edge `(u, v)` is the only edge leaving
//! `u` and the only edge entering `v`, no head of a negative edge is itself a
//! negative vertex (so `k <= n/2`), and every in/out degree is at most
//! `ceil(2m/n) + 2`. Original vertices keep their ids; auxiliary vertices are
//! appended after them.

use super::{Edge, EdgeOrigin, Graph};
use crate::error::GraphError;

/// Maps between an input graph and its canonical form.
#[derive(Clone, Debug)]
pub struct VertexMap {
    /// original vertex -> canonical vertex
    pub forward: Vec<usize>,
    /// canonical vertex -> original vertex, `None` for auxiliary vertices
    pub backward: Vec<Option<usize>>,
    /// canonical edge -> original edge it copies, or a zero connector
    pub edge_origin: Vec<EdgeOrigin>,
}

#[derive(Clone, Copy, Debug)]
struct Item {
    tail: usize,
    head: usize,
    len: f64,
    origin: EdgeOrigin,
}

pub fn preprocess(g: &Graph) -> Result<(Graph, VertexMap), GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }

    // Drop nonnegative self-loops and all but the shortest nonnegative parallel.
    let mut keep = vec![false; g.m()];
    let mut best = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    for u in 0..n {
        for &i in g.out_edges(u) {
            let e = g.edge(i);
            if e.tail == e.head {
                if e.len < 0.0 {
                    return Err(GraphError::NegativeSelfLoop(e.tail));
                }
                continue;
            }
            if e.len < 0.0 {
                keep[i] = true;
            } else if stamp[e.head] != u {
                stamp[e.head] = u;
                best[e.head] = i;
            } else {
                let j = best[e.head];
                if e.len < g.edge(j).len || (e.len == g.edge(j).len && i < j) {
                    best[e.head] = i;
                }
            }
        }
        for &i in g.out_edges(u) {
            let e = g.edge(i);
            if e.tail != e.head && e.len >= 0.0 && best[e.head] == i {
                keep[i] = true;
            }
        }
    }
    let kept: Vec<Item> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep[i])
        .map(|(i, e)| Item { tail: e.tail, head: e.head, len: e.len, origin: EdgeOrigin::Copy(i) })
        .collect();

    let (n1, isolated) = isolate_negative_edges(n, &kept);

    let m1 = isolated.len();
    let mut cap = (2 * m1).div_ceil(n1) + 2;
    let (n2, items) = loop {
        let (n2, items) = split_degrees(n1, &isolated, cap);
        let bound = (2 * items.len()).div_ceil(n2) + 2;
        if max_degree(n2, &items) <= bound || cap <= 3 {
            break (n2, items);
        }
        cap = bound.max(3);
    };

    let edges = items.iter().map(|it| Edge::new(it.tail, it.head, it.len)).collect();
    let canon = Graph::build(n2, edges);
    let map = VertexMap {
        forward: (0..n).collect(),
        backward: (0..n2).map(|v| (v < n).then_some(v)).collect(),
        edge_origin: items.iter().map(|it| it.origin).collect(),
    };
    Ok((canon, map))
}

/// Gives every negative edge that shares its tail or head with other edges
/// (or whose head is a negative vertex) a private tail and head joined to the
/// original endpoints by zero-length connectors.
fn isolate_negative_edges(n: usize, items: &[Item]) -> (usize, Vec<Item>) {
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    let mut neg_tail = vec![false; n];
    for it in items {
        out_deg[it.tail] += 1;
        in_deg[it.head] += 1;
        if it.len < 0.0 {
            neg_tail[it.tail] = true;
        }
    }
    let mut next = n;
    let mut out = Vec::with_capacity(items.len());
    for it in items {
        let clean = out_deg[it.tail] == 1 && in_deg[it.head] == 1 && !neg_tail[it.head];
        if it.len >= 0.0 || clean {
            out.push(*it);
            continue;
        }
        let (a, b) = (next, next + 1);
        next += 2;
        out.push(Item { tail: it.tail, head: a, len: 0.0, origin: EdgeOrigin::Connector });
        out.push(Item { tail: a, head: b, len: it.len, origin: it.origin });
        out.push(Item { tail: b, head: it.head, len: 0.0, origin: EdgeOrigin::Connector });
    }
    (next, out)
}

/// Replaces the out-star (in-star) of every vertex with degree above `cap` by
/// a chain of fresh vertices joined with zero-length connectors, each holding
/// at most `cap - 1` of the original edges.
fn split_degrees(n: usize, items: &[Item], cap: usize) -> (usize, Vec<Item>) {
    debug_assert!(cap >= 2);
    let mut out = items.to_vec();
    let mut extra = Vec::new();
    let mut next = n;

    let by_tail = bucket(n, items.iter().map(|it| it.tail));
    let by_head = bucket(n, items.iter().map(|it| it.head));
    for v in 0..n {
        let list = by_tail.get(v);
        if list.len() <= cap {
            continue;
        }
        let mut cur = v;
        let mut rest = list;
        while rest.len() > cap {
            for &i in &rest[..cap - 1] {
                out[i].tail = cur;
            }
            let c = next;
            next += 1;
            extra.push(Item { tail: cur, head: c, len: 0.0, origin: EdgeOrigin::Connector });
            cur = c;
            rest = &rest[cap - 1..];
        }
        for &i in rest {
            out[i].tail = cur;
        }
    }
    for v in 0..n {
        let list = by_head.get(v);
        if list.len() <= cap {
            continue;
        }
        let mut cur = v;
        let mut rest = list;
        while rest.len() > cap {
            for &i in &rest[..cap - 1] {
                out[i].head = cur;
            }
            let d = next;
            next += 1;
            extra.push(Item { tail: d, head: cur, len: 0.0, origin: EdgeOrigin::Connector });
            cur = d;
            rest = &rest[cap - 1..];
        }
        for &i in rest {
            out[i].head = cur;
        }
    }
    out.extend(extra);
    (next, out)
}

/// Item ids grouped by a vertex key, in increasing id order.
struct Buckets {
    start: Vec<usize>,
    ids: Vec<usize>,
}

impl Buckets {
    fn get(&self, v: usize) -> &[usize] {
        &self.ids[self.start[v]..self.start[v + 1]]
    }
}

fn bucket(n: usize, keys: impl Iterator<Item = usize> + Clone) -> Buckets {
    let mut start = vec![0usize; n + 1];
    for k in keys.clone() {
        start[k + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut ids = vec![0; start[n]];
    for (i, k) in keys.enumerate() {
        ids[fill[k]] = i;
        fill[k] += 1;
    }
    Buckets { start, ids }
}

fn max_degree(n: usize, items: &[Item]) -> usize {
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    for it in items {
        out_deg[it.tail] += 1;
        in_deg[it.head] += 1;
    }
    out_deg.into_iter().chain(in_deg).max().unwrap_or(0)
}

/// Checks the canonical-form invariants, returning a description of the
/// first violation.
pub fn check_canonical(g: &Graph) -> Result<(), String> {
    let in_deg = g.in_degrees();
    let bound = if g.n() == 0 { 2 } else { (2 * g.m()).div_ceil(g.n()) + 2 };
    for v in 0..g.n() {
        if g.out_degree(v) > bound || in_deg[v] > bound {
            return Err(format!("vertex {v} exceeds degree bound {bound}"));
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail == e.head {
            return Err(format!("self-loop at edge {i}"));
        }
        if e.len < 0.0 {
            if g.out_degree(e.tail) != 1 || in_deg[e.head] != 1 {
                return Err(format!("negative edge {i} is not isolated"));
            }
            if g.is_negative_vertex(e.head) {
                return Err(format!("head of negative edge {i} is a negative vertex"));
            }
        }
    }
    if 2 * g.k() > g.n() {
        return Err(format!("k = {} exceeds n/2", g.k()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_negative_edge_is_already_canonical() {
        let g = Graph::new(2, vec![Edge::new(0, 1, -2.0)]).unwrap();
        let (c, map) = preprocess(&g).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.edges(), g.edges());
        assert_eq!(map.edge_origin, vec![EdgeOrigin::Copy(0)]);
        check_canonical(&c).unwrap();
    }

    #[test]
    fn star_of_negative_edges_gets_private_tails() {
        let edges = (1..=10).map(|v| Edge::new(0, v, -(v as f64))).collect();
        let g = Graph::new(11, edges).unwrap();
        let (c, map) = preprocess(&g).unwrap();
        check_canonical(&c).unwrap();
        assert_eq!(c.k(), 10);
        for &u in c.neg_vertices() {
            assert_eq!(c.out_degree(u), 1);
            assert_eq!(map.backward[u], None);
        }
    }

    #[test]
    fn keeps_shortest_nonnegative_parallel() {
        let g = Graph::new(
            2,
            vec![Edge::new(0, 1, 5.0), Edge::new(0, 1, 2.0), Edge::new(1, 1, 0.0)],
        )
        .unwrap();
        let (c, map) = preprocess(&g).unwrap();
        assert_eq!(c.edges(), &[Edge::new(0, 1, 2.0)]);
        assert_eq!(map.edge_origin, vec![EdgeOrigin::Copy(1)]);
    }

    #[test]
    fn high_degree_vertex_is_split() {
        let mut edges: Vec<Edge> = (1..51).map(|v| Edge::new(0, v, v as f64)).collect();
        edges.extend((1..51).map(|v| Edge::new(v, 0, 1.0)));
        edges.extend((0..10).map(|v| Edge::new(51 + v, 52 + v, -1.0)));
        let g = Graph::new(62, edges).unwrap();
        let (c, _) = preprocess(&g).unwrap();
        check_canonical(&c).unwrap();
        assert!(c.n() > g.n());
    }

    #[test]
    fn chained_negative_edges_are_separated() {
        let g = Graph::new(3, vec![Edge::new(0, 1, -1.0), Edge::new(1, 2, -1.0)]).unwrap();
        let (c, _) = preprocess(&g).unwrap();
        check_canonical(&c).unwrap();
        assert_eq!(c.k(), 2);
    }

    #[test]
    fn empty_graph_is_rejected() {
        let g = Graph::new(0, vec![]).unwrap();
        assert_eq!(preprocess(&g).unwrap_err(), GraphError::EmptyGraph);
    }
}
