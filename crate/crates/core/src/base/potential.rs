//! Vertex potentials and reweighting.

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub values: Vec<f64>,
}

impl Potential {
    pub fn zeros(n: usize) -> Self {
        Potential { values: vec![0.0; n] }
    }

    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Potential { values }
    }

    /// Potential from a distance vector. Infinite entries become one more than
    /// the largest finite entry, which keeps every nonnegative edge leaving an
    /// unreached region nonnegative.
    pub fn from_distances(dist: &[f64]) -> Self {
        let top = dist.iter().copied().filter(|d| d.is_finite()).fold(f64::NEG_INFINITY, f64::max);
        let fill = if top.is_finite() { top + 1.0 } else { 0.0 };
        Potential { values: dist.iter().map(|&d| if d.is_finite() { d } else { fill }).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.values[v]
    }

    /// `self` pulled back along a vertex map (`map[i]` is the vertex of
    /// `self` that new vertex `i` reads).
    pub fn pull(&self, map: &[usize]) -> Potential {
        Potential { values: map.iter().map(|&v| self.values[v]).collect() }
    }

    pub fn negated(&self) -> Potential {
        Potential { values: self.values.iter().map(|x| -x).collect() }
    }

    /// Shifts all values so the minimum is zero.
    pub fn shifted_nonnegative(&self) -> Potential {
        let lo = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        let lo = if lo.is_finite() { lo } else { 0.0 };
        Potential { values: self.values.iter().map(|x| x - lo).collect() }
    }
}

/// Edge lengths `len + phi(tail) - phi(head)`.
pub fn reweight(g: &Graph, phi: &Potential) -> Graph {
    assert_eq!(phi.len(), g.n(), "potential has the wrong length");
    g.with_lengths(g.edges().iter().map(|e| e.len + phi.values[e.tail] - phi.values[e.head]))
}

/// No nonnegative edge becomes negative under `phi`.
pub fn validate_potential(g: &Graph, phi: &Potential) -> bool {
    validate_potential_tol(g, phi, 0.0)
}

pub fn validate_potential_tol(g: &Graph, phi: &Potential, tau: f64) -> bool {
    phi.len() == g.n()
        && phi.values.iter().all(|x| x.is_finite())
        && g.edges()
            .iter()
            .all(|e| e.len < 0.0 || e.len + phi.values[e.tail] - phi.values[e.head] >= -tau)
}

/// Every edge is nonnegative under `phi`.
pub fn neutralizes(g: &Graph, phi: &Potential) -> bool {
    phi.len() == g.n()
        && g.edges().iter().all(|e| e.len + phi.values[e.tail] - phi.values[e.head] >= 0.0)
}

/// Pointwise sum: `phi2` is meant for the graph already reweighted by `phi1`.
pub fn compose(phi1: &Potential, phi2: &Potential) -> Potential {
    assert_eq!(phi1.len(), phi2.len());
    Potential { values: phi1.values.iter().zip(&phi2.values).map(|(a, b)| a + b).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn g1() -> Graph {
        Graph::new(3, vec![Edge::new(0, 1, 4.0), Edge::new(1, 2, -2.0)]).unwrap()
    }

    #[test]
    fn zero_potential_is_identity() {
        let g = g1();
        let phi = Potential::zeros(3);
        assert_eq!(reweight(&g, &phi).edges(), g.edges());
        assert!(validate_potential(&g, &phi));
        assert!(!neutralizes(&g, &phi));
    }

    #[test]
    fn johnson_values_on_g1() {
        let g = g1();
        let phi = Potential::new(vec![0.0, 0.0, -2.0]);
        let r = reweight(&g, &phi);
        assert_eq!(r.edge(0).len, 4.0);
        assert_eq!(r.edge(1).len, 0.0);
        assert_eq!(r.k(), 0);
        assert!(neutralizes(&g, &phi));
    }

    #[test]
    fn round_trip() {
        let g = g1();
        let phi = Potential::new(vec![3.0, -7.0, 11.0]);
        let back = reweight(&reweight(&g, &phi), &phi.negated());
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn infinities_are_filled() {
        let phi = Potential::from_distances(&[0.0, -3.0, f64::INFINITY]);
        assert_eq!(phi.values, vec![0.0, -3.0, 1.0]);
        assert_eq!(Potential::from_distances(&[f64::INFINITY]).values, vec![0.0]);
    }

    #[test]
    fn invalid_potential_is_caught() {
        let g = g1();
        assert!(!validate_potential(&g, &Potential::new(vec![0.0, 5.0, 0.0])));
    }
}
