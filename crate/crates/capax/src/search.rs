//! Independence search with a wall clock and optional parallelism.
//!
//! The parallel driver splits the root into the branches the sequential
//! search would visit and solves each one independently from the same
//! starting incumbent, with a fixed share of the node budget. Nothing is
//! shared between workers, so the outcome does not depend on scheduling.

use std::time::Instant;

use capax_core::independence::{
    self, clique_cover_bound, initial_incumbent, root_branches, search_subproblem, Clock,
    CountStatus, IndependentSetCertificate, SearchOptions, SearchOutcome, SearchStatus,
};
use capax_core::{Bitset, Graph, SearchBudget};
use rayon::prelude::*;

use crate::Result;

/// Environment variable capping search threads.
pub const THREADS_ENV: &str = "CAPAX_THREADS";

pub struct WallClock(Instant);

impl WallClock {
    pub fn start() -> Self {
        Self(Instant::now())
    }
}

impl Clock for WallClock {
    fn elapsed_seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// Thread cap from `CAPAX_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
}

/// Exact maximum independent set honouring both budget caps.
/// `threads = Some(1)` (or `None` with no env override) runs sequentially
/// and yields a deterministic certificate.
pub fn max_independent_set(
    g: &Graph,
    budget: SearchBudget,
    options: &SearchOptions,
    threads: Option<usize>,
) -> Result<SearchOutcome> {
    let clock = WallClock::start();
    match threads {
        Some(t) if t > 1 => parallel(g, budget, options, t, &clock),
        _ => Ok(independence::max_independent_set_with(
            g, budget, options, &clock,
        )?),
    }
}

fn parallel(
    g: &Graph,
    budget: SearchBudget,
    options: &SearchOptions,
    threads: usize,
    clock: &WallClock,
) -> Result<SearchOutcome> {
    let incumbent = initial_incumbent(g, options)?;
    let floor = incumbent.len();
    let branches: Vec<(usize, Bitset)> = root_branches(g, &Bitset::full(g.n()))
        .into_iter()
        .filter(|(_, cand)| {
            let bound = if cand.count() <= options.clique_cover_threshold {
                clique_cover_bound(g, cand)
            } else {
                cand.count()
            };
            1 + bound > floor
        })
        .collect();
    let share = SearchBudget {
        max_nodes: (budget.max_nodes / branches.len().max(1) as u64).max(1),
        max_seconds: budget.max_seconds,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Usage(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        branches
            .par_iter()
            .map(|(v, cand)| {
                search_subproblem(g, &[*v], cand.clone(), floor, share, options, clock)
            })
            .collect()
    });

    let complete = results.iter().all(|r| r.complete);
    let nodes = results.iter().map(|r| r.nodes).sum();
    let mut best = incumbent;
    for r in results {
        if let Some(set) = r.improved {
            if set.len() > best.len() {
                best = set;
            }
        }
    }
    Ok(SearchOutcome {
        size: best.len(),
        certificate: IndependentSetCertificate::new(g, best)?,
        status: if complete {
            SearchStatus::Exact
        } else {
            SearchStatus::LowerBound
        },
        nodes,
    })
}

pub fn count_independent_sets(g: &Graph, size: usize, budget: SearchBudget) -> (u128, CountStatus) {
    independence::count_independent_sets(g, size, budget, &WallClock::start())
}
