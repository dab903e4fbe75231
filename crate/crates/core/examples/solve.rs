//! Solves a small graph with every algorithm and prints the distances.
//!
//! cargo run --example solve

use negsssp::{solve, Algorithm, Edge, Graph, Solution, SolverConfig};

fn main() {
    let g = Graph::new(
        5,
        vec![
            Edge::new(0, 1, 4.0),
            Edge::new(0, 2, 7.0),
            Edge::new(1, 2, -3.0),
            Edge::new(2, 3, 2.0),
            Edge::new(3, 4, -1.0),
            Edge::new(1, 4, 5.0),
        ],
    )
    .expect("valid graph");

    for algo in Algorithm::ALL {
        let cfg = SolverConfig::with_algorithm(algo);
        match solve(&g, 0, &cfg).expect("solver error") {
            Solution::Distances { dist, .. } => println!("{:>18}: {dist:?}", algo.name()),
            Solution::Cycle(c) => println!("{:>18}: negative cycle {:?}", algo.name(), c.vertices),
        }
    }

    let mut with_cycle = g.edges().to_vec();
    with_cycle.push(Edge::new(4, 1, -2.0));
    let g = Graph::new(5, with_cycle).unwrap();
    if let Solution::Cycle(c) = solve(&g, 0, &SolverConfig::default()).unwrap() {
        println!("after adding 4 -> 1 (-2): cycle {:?} of length {}", c.vertices, c.length);
    }
}
