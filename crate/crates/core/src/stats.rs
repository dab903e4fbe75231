//! Per-thread cost counters.
//!
//! Every shortest-path primitive bumps these as it runs, so a solver's work
//! can be compared across algorithms without looking at wall time. Counters
//! live in thread-local storage: a run that stays on one thread sees exactly
//! its own work.

use std::cell::Cell;

use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// Edge relaxations performed by Dijkstra passes and hop rounds.
    pub hop_relaxations: u64,
    pub dijkstra_pops: u64,
    /// Edges materialized in auxiliary graphs (layers, reducers, residuals).
    pub aux_edges: u64,
    pub max_depth: u64,
    pub retries: u64,
    /// Total size of sampled estimate sets, summed over reducer levels.
    pub estimate_samples: u64,
}

impl Counters {
    fn merge(self, o: Counters) -> Counters {
        Counters {
            hop_relaxations: self.hop_relaxations + o.hop_relaxations,
            dijkstra_pops: self.dijkstra_pops + o.dijkstra_pops,
            aux_edges: self.aux_edges + o.aux_edges,
            max_depth: self.max_depth.max(o.max_depth),
            retries: self.retries + o.retries,
            estimate_samples: self.estimate_samples + o.estimate_samples,
        }
    }
}

thread_local! {
    static COUNTERS: Cell<Counters> = Cell::new(Counters::default());
}

fn update(f: impl FnOnce(&mut Counters)) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub(crate) fn add_relaxations(n: u64) {
    update(|c| c.hop_relaxations += n);
}

pub(crate) fn add_pops(n: u64) {
    update(|c| c.dijkstra_pops += n);
}

pub(crate) fn add_aux_edges(n: u64) {
    update(|c| c.aux_edges += n);
}

pub(crate) fn note_depth(d: u64) {
    update(|c| c.max_depth = c.max_depth.max(d));
}

pub(crate) fn add_retry() {
    update(|c| c.retries += 1);
}

pub(crate) fn add_estimate_samples(n: u64) {
    update(|c| c.estimate_samples += n);
}

pub fn snapshot() -> Counters {
    COUNTERS.with(|c| c.get())
}

/// Runs `f` with fresh counters and returns what it accumulated. Counters
/// from an enclosing measurement keep accumulating across the call.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, Counters) {
    let outer = COUNTERS.with(|c| c.replace(Counters::default()));
    let out = f();
    let inner = COUNTERS.with(|c| c.get());
    COUNTERS.with(|c| c.set(outer.merge(inner)));
    (out, inner)
}
