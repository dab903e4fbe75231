//! Deterministic shortest-path primitives and the brute-force oracles.

pub mod cycle;
pub mod dijkstra;
pub mod hop;
pub mod johnson;
pub mod oracle;
pub mod potential;

pub use cycle::NegativeCycle;
pub use dijkstra::{dijkstra, DistanceResult, ShortestPaths};
pub use oracle::{all_pairs_oracle, bellman_ford_all, has_negative_cycle};
pub use hop::{hop_from_labels, hop_sssp, HopDistanceTable, HopOptions, HopRun};
pub use johnson::johnson_neutralize;
pub use oracle::{bellman_ford_oracle, proper_hop_oracle};
pub use potential::{compose, neutralizes, reweight, validate_potential, validate_potential_tol, Potential};
