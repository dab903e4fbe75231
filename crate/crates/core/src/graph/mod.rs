//! Directed multigraphs with real edge lengths.
//!
//! A [`Graph`] is immutable once built. Out-adjacency is stored in CSR form,
//! and the set of negative vertices (tails of negative edges) is computed at
//! construction.

pub mod dimacs;
pub mod generate;
pub mod preprocess;

use crate::error::GraphError;

pub use preprocess::{preprocess, VertexMap};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub len: f64,
}

impl Edge {
    pub fn new(tail: usize, head: usize, len: f64) -> Self {
        Edge { tail, head, len }
    }
}

/// Where an edge of an auxiliary graph comes from, used to carry negative
/// cycles back to the graph it was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// A copy of the given parent edge, same length up to potentials.
    Copy(usize),
    /// A zero-length arc between two copies of one parent vertex.
    Connector,
    /// Stands for a whole parent path that is not recorded.
    Shortcut,
}

/// Size parameters used for cost accounting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// `m + n ln n`
    pub mu: f64,
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    out_start: Vec<usize>,
    out_list: Vec<usize>,
    neg: Vec<usize>,
}

impl Graph {
    /// Validates vertex ids and lengths. Negative self-loops are rejected
    /// since they are negative cycles on their own.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        for (i, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { edge: i, vertex: v, n });
                }
            }
            if !e.len.is_finite() {
                return Err(GraphError::NonFiniteLength(i));
            }
            if e.tail == e.head && e.len < 0.0 {
                return Err(GraphError::NegativeSelfLoop(e.tail));
            }
        }
        Ok(Self::build(n, edges))
    }

    /// Internal constructor for graphs whose edges are known to be valid.
    pub(crate) fn build(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.tail < n && e.head < n && e.len.is_finite()));
        let mut out_start = vec![0usize; n + 1];
        for e in &edges {
            out_start[e.tail + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
        }
        let mut fill = out_start.clone();
        let mut out_list = vec![0usize; edges.len()];
        for (i, e) in edges.iter().enumerate() {
            out_list[fill[e.tail]] = i;
            fill[e.tail] += 1;
        }
        let mut neg: Vec<usize> = edges.iter().filter(|e| e.len < 0.0).map(|e| e.tail).collect();
        neg.sort_unstable();
        neg.dedup();
        Graph { n, edges, out_start, out_list, neg }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of negative vertices.
    pub fn k(&self) -> usize {
        self.neg.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Ids of edges leaving `v`, in increasing order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_list[self.out_start[v]..self.out_start[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.head] += 1;
        }
        d
    }

    /// Tails of negative edges, sorted.
    pub fn neg_vertices(&self) -> &[usize] {
        &self.neg
    }

    pub fn is_negative_vertex(&self, v: usize) -> bool {
        self.neg.binary_search(&v).is_ok()
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&i| self.edges[i].len < 0.0)
    }

    pub fn negative_edge_mask(&self) -> Vec<bool> {
        self.edges.iter().map(|e| e.len < 0.0).collect()
    }

    /// Heads of the negative edges leaving `u` (the set Ū when applied to U),
    /// sorted and deduplicated.
    pub fn heads_of(&self, u: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for &t in u {
            for &e in self.out_edges(t) {
                if self.edges[e].len < 0.0 {
                    out.push(self.edges[e].head);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.n as f64;
        let mu = self.m() as f64 + if self.n > 1 { n * n.ln() } else { 0.0 };
        GraphStats { n: self.n, m: self.m(), k: self.k(), mu }
    }

    /// Same vertices, every edge reversed; edge ids are preserved.
    pub fn transpose(&self) -> Graph {
        let edges = self.edges.iter().map(|e| Edge::new(e.head, e.tail, e.len)).collect();
        Graph::build(self.n, edges)
    }

    /// Same structure with new lengths, indexed by edge id.
    pub fn with_lengths(&self, lens: impl Iterator<Item = f64>) -> Graph {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .zip(lens)
            .map(|(e, l)| Edge::new(e.tail, e.head, l))
            .collect();
        assert_eq!(edges.len(), self.edges.len());
        Graph {
            n: self.n,
            out_start: self.out_start.clone(),
            out_list: self.out_list.clone(),
            neg: {
                let mut neg: Vec<usize> =
                    edges.iter().filter(|e| e.len < 0.0).map(|e| e.tail).collect();
                neg.sort_unstable();
                neg.dedup();
                neg
            },
            edges,
        }
    }

    /// The subgraph on vertices with `keep_vertex[v]`, keeping edges that pass
    /// `keep_edge` and have both endpoints kept. Vertices are renumbered in
    /// increasing order.
    pub fn subgraph(
        &self,
        keep_vertex: &[bool],
        mut keep_edge: impl FnMut(usize, &Edge) -> bool,
    ) -> Subgraph {
        let mut local_of = vec![None; self.n];
        let mut vertex_of = Vec::new();
        for v in 0..self.n {
            if keep_vertex[v] {
                local_of[v] = Some(vertex_of.len());
                vertex_of.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut edge_of = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (local_of[e.tail], local_of[e.head]) {
                if keep_edge(i, e) {
                    edges.push(Edge::new(a, b, e.len));
                    edge_of.push(i);
                }
            }
        }
        Subgraph { graph: Graph::build(vertex_of.len(), edges), vertex_of, local_of, edge_of }
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(&self, keep_vertex: &[bool]) -> Subgraph {
        self.subgraph(keep_vertex, |_, _| true)
    }

    /// G_U: all vertices and nonnegative edges, plus the negative edges whose
    /// tail is in `u`.
    pub fn restrict_negatives(&self, u: &[usize]) -> Subgraph {
        let mut in_u = vec![false; self.n];
        for &x in u {
            in_u[x] = true;
        }
        self.subgraph(&vec![true; self.n], |_, e| e.len >= 0.0 || in_u[e.tail])
    }

    /// The nonnegative part G+.
    pub fn nonnegative_part(&self) -> Subgraph {
        self.subgraph(&vec![true; self.n], |_, e| e.len >= 0.0)
    }
}

/// A subgraph together with the maps back to its parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex id -> parent vertex id
    pub vertex_of: Vec<usize>,
    /// parent vertex id -> local vertex id
    pub local_of: Vec<Option<usize>>,
    /// local edge id -> parent edge id
    pub edge_of: Vec<usize>,
}

impl Subgraph {
    pub fn local_vertices(&self, parent: &[usize]) -> Vec<usize> {
        parent.iter().filter_map(|&v| self.local_of[v]).collect()
    }
}

pub(crate) fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Graph {
        Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, -2.0)]).unwrap()
    }

    #[test]
    fn negative_vertices_are_tails_of_negative_edges() {
        let g = g1();
        assert_eq!(g.neg_vertices(), &[1]);
        assert_eq!(g.heads_of(&[1]), vec![2]);
        assert_eq!(g.k(), 1);
    }

    #[test]
    fn rejects_negative_self_loop() {
        let err = Graph::new(2, vec![Edge::new(1, 1, -1.0)]).unwrap_err();
        assert_eq!(err, GraphError::NegativeSelfLoop(1));
    }

    #[test]
    fn rejects_bad_ids_and_nan() {
        assert!(matches!(
            Graph::new(2, vec![Edge::new(0, 2, 1.0)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::new(2, vec![Edge::new(0, 1, f64::NAN)]),
            Err(GraphError::NonFiniteLength(0))
        ));
    }

    #[test]
    fn restrict_negatives_drops_other_negative_edges() {
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, -1.0), Edge::new(2, 3, -1.0), Edge::new(1, 2, 3.0)],
        )
        .unwrap();
        let s = g.restrict_negatives(&[0]);
        assert_eq!(s.graph.m(), 2);
        assert_eq!(s.edge_of, vec![0, 2]);
        assert_eq!(s.graph.neg_vertices(), &[0]);
    }

    #[test]
    fn induced_renumbers() {
        let g = g1();
        let s = g.induced(&[false, true, true]);
        assert_eq!(s.graph.n(), 2);
        assert_eq!(s.graph.edges(), &[Edge::new(0, 1, -2.0)]);
        assert_eq!(s.vertex_of, vec![1, 2]);
        assert_eq!(s.local_of, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn transpose_keeps_ids() {
        let t = g1().transpose();
        assert_eq!(t.edge(1), &Edge::new(2, 1, -2.0));
        assert_eq!(t.out_edges(2), &[1]);
    }
}
