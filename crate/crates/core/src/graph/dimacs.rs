//! Extended DIMACS `.gr` files.
//!
//! ```text
//! c comment
//! p sp <n> <m>
//! a <tail> <head> <length>
//! ```
//!
//! Vertices are 1-indexed on disk and 0-indexed in memory. Lengths are
//! decimal reals and are written with Rust's shortest round-trip formatting,
//! so `load(save(g))` reproduces every `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Edge, Graph};
use crate::error::DimacsError;

pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let parse_err = |msg: String| DimacsError::Parse { line, msg };
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err("duplicate problem line".into()));
                }
                if tok.next() != Some("sp") {
                    return Err(parse_err("expected `p sp <n> <m>`".into()));
                }
                let n = parse_count(tok.next(), line)?;
                let m = parse_count(tok.next(), line)?;
                if tok.next().is_some() {
                    return Err(parse_err("trailing tokens after header".into()));
                }
                header = Some((n, m));
                edges.reserve(m);
            }
            Some("a") => {
                let (n, _) = header.ok_or(DimacsError::MissingHeader)?;
                let tail = parse_vertex(tok.next(), n, line)?;
                let head = parse_vertex(tok.next(), n, line)?;
                let len: f64 = tok
                    .next()
                    .ok_or_else(|| parse_err("missing arc length".into()))?
                    .parse()
                    .map_err(|e| parse_err(format!("bad arc length: {e}")))?;
                if !len.is_finite() {
                    return Err(parse_err("arc length must be finite".into()));
                }
                if tok.next().is_some() {
                    return Err(parse_err("trailing tokens after arc".into()));
                }
                edges.push(Edge::new(tail, head, len));
            }
            Some(other) => return Err(parse_err(format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(DimacsError::MissingHeader)?;
    if edges.len() != m {
        return Err(DimacsError::InconsistentHeader { declared: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges)?)
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize, DimacsError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| DimacsError::Parse { line, msg: "expected a nonnegative integer".into() })
}

fn parse_vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize, DimacsError> {
    let v: usize = parse_count(tok, line)?;
    if v == 0 || v > n {
        return Err(DimacsError::Parse { line, msg: format!("vertex {v} outside 1..={n}") });
    }
    Ok(v - 1)
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut s = String::with_capacity(16 * g.m() + 32);
    writeln!(s, "p sp {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(s, "a {} {} {}", e.tail + 1, e.head + 1, e.len).unwrap();
    }
    s
}

pub fn load_dimacs(path: impl AsRef<Path>) -> Result<Graph, DimacsError> {
    parse_dimacs(&fs::read_to_string(path)?)
}

pub fn save_dimacs(g: &Graph, path: impl AsRef<Path>) -> Result<(), DimacsError> {
    fs::write(path, to_dimacs(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GraphError;

    #[test]
    fn parses_minimal_file() {
        let g = parse_dimacs("c tiny\np sp 2 1\na 1 2 -3.5\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge::new(0, 1, -3.5)]);
    }

    #[test]
    fn header_count_mismatch() {
        let text = "p sp 3 5\na 1 2 1\na 2 3 1\na 3 1 1\na 1 3 1\n";
        assert!(matches!(
            parse_dimacs(text),
            Err(DimacsError::InconsistentHeader { declared: 5, found: 4 })
        ));
    }

    #[test]
    fn reports_line_numbers() {
        match parse_dimacs("p sp 2 1\n\na 1 x 2\n") {
            Err(DimacsError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_dimacs("a 1 2 3\n"), Err(DimacsError::MissingHeader)));
        assert!(matches!(parse_dimacs("p sp 2 1\na 1 3 1\n"), Err(DimacsError::Parse { .. })));
    }

    #[test]
    fn negative_self_loop_is_a_graph_error() {
        assert!(matches!(
            parse_dimacs("p sp 1 1\na 1 1 -1\n"),
            Err(DimacsError::Graph(GraphError::NegativeSelfLoop(0)))
        ));
    }

    #[test]
    fn awkward_lengths_round_trip() {
        let lens = [0.1, -1e-300, 1.0 / 3.0, -7.0, 123456789.125, f64::MIN_POSITIVE];
        let edges = lens.iter().map(|&l| Edge::new(0, 1, l)).collect();
        let g = Graph::new(2, edges).unwrap();
        let back = parse_dimacs(&to_dimacs(&g)).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
}
