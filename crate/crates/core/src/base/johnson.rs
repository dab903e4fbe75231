use super::cycle::NegativeCycle;
use super::hop::{hop_from_labels, HopOptions};
use super::potential::Potential;
use crate::graph::Graph;

/// `phi(v) = d(V, v)`, computed with a hop budget equal to the number of
/// negative edges. Neutralizes every edge unless a negative cycle exists.
pub fn johnson_neutralize(g: &Graph) -> Result<Potential, NegativeCycle> {
    let h = g.negative_edges().count();
    let opts = HopOptions { detect: true, ..Default::default() };
    let table = hop_from_labels(g, vec![0.0; g.n()], h, &opts)?;
    Ok(Potential::new(table.dist))
}
