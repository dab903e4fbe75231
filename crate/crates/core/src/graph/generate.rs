//! Seeded random instances with integer lengths.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Edge, Graph};
use crate::error::GenError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    /// Exact number of negative edges in the output.
    pub negatives: usize,
    /// Inclusive range for nonnegative lengths.
    pub nonneg_range: (i64, i64),
    /// Inclusive range for negative lengths.
    pub neg_range: (i64, i64),
    pub planted_cycle: bool,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, negatives: usize, seed: u64) -> Self {
        GenSpec {
            n,
            m,
            negatives,
            nonneg_range: (0, 20),
            neg_range: (-8, -1),
            planted_cycle: false,
            seed,
        }
    }

    pub fn planted(mut self, yes: bool) -> Self {
        self.planted_cycle = yes;
        self
    }

    pub fn weights(mut self, nonneg: (i64, i64), neg: (i64, i64)) -> Self {
        self.nonneg_range = nonneg;
        self.neg_range = neg;
        self
    }

    fn check(&self) -> Result<(), GenError> {
        let bad = |msg: &str| Err(GenError::InfeasibleSpec(msg.to_string()));
        if self.negatives > self.m {
            return bad("more negative edges than edges");
        }
        if self.m > 0 && self.n < 2 {
            return bad("edges need at least two vertices (self-loops are never generated)");
        }
        let (a, b) = self.nonneg_range;
        if a < 0 || a > b {
            return bad("nonnegative range must satisfy 0 <= lo <= hi");
        }
        let (a, b) = self.neg_range;
        if b >= 0 || a > b {
            return bad("negative range must satisfy lo <= hi < 0");
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::with_capacity(spec.m);
    let mut negatives_left = spec.negatives;

    if spec.planted_cycle {
        let len = spec.n.min(3);
        if len < 2 || spec.m < len {
            return Err(GenError::InfeasibleSpec("no room for a planted cycle".into()));
        }
        let (neg_lo, _) = spec.neg_range;
        let (pos_lo, _) = spec.nonneg_range;
        let q = (1..=len.min(spec.negatives))
            .find(|&q| q as i64 * neg_lo + (len - q) as i64 * pos_lo < 0)
            .ok_or_else(|| {
                GenError::InfeasibleSpec("planted cycle cannot be made negative".into())
            })?;
        let verts: Vec<usize> = sample(&mut rng, spec.n, len).into_vec();
        for i in 0..len {
            let w = if i < q { neg_lo } else { pos_lo };
            edges.push(Edge::new(verts[i], verts[(i + 1) % len], w as f64));
        }
        negatives_left -= q;
    }

    let free = spec.m - edges.len();
    let neg_slots = sample(&mut rng, free, negatives_left).into_vec();
    let mut is_neg = vec![false; free];
    for i in neg_slots {
        is_neg[i] = true;
    }
    for neg in is_neg {
        let u = rng.gen_range(0..spec.n);
        let mut v = rng.gen_range(0..spec.n - 1);
        if v >= u {
            v += 1;
        }
        let (lo, hi) = if neg { spec.neg_range } else { spec.nonneg_range };
        edges.push(Edge::new(u, v, rng.gen_range(lo..=hi) as f64));
    }
    edges.shuffle(&mut rng);
    Ok(Graph::build(spec.n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertices() {
        let g = generate(&GenSpec::new(3, 0, 0, 1)).unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn same_seed_same_graph() {
        let spec = GenSpec::new(40, 200, 10, 7).planted(true);
        assert_eq!(generate(&spec).unwrap().edges(), generate(&spec).unwrap().edges());
        let other = GenSpec { seed: 8, ..spec };
        assert_ne!(generate(&other).unwrap().edges(), generate(&spec).unwrap().edges());
    }

    #[test]
    fn exact_negative_count() {
        for planted in [false, true] {
            let g = generate(&GenSpec::new(50, 300, 17, 3).planted(planted)).unwrap();
            assert_eq!(g.edges().iter().filter(|e| e.len < 0.0).count(), 17);
            assert!(g.edges().iter().all(|e| e.tail != e.head));
        }
    }

    #[test]
    fn infeasible_specs() {
        assert!(generate(&GenSpec::new(5, 3, 4, 0)).is_err());
        assert!(generate(&GenSpec::new(1, 1, 0, 0)).is_err());
        assert!(generate(&GenSpec::new(5, 5, 0, 0).planted(true)).is_err());
        assert!(generate(&GenSpec::new(5, 5, 1, 0).weights((0, 3), (-2, 1))).is_err());
    }
}
