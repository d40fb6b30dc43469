//! Independent sets: verification, exact maximum search, and counting.
//!
//! The exact search is a depth-first branch and bound. At each node it
//! branches on the candidate of maximum degree inside the candidate set
//! (ties to the lowest index), first including it and then excluding it.
//! Nodes are pruned with a greedy clique cover of the candidates when there
//! are at most [`SearchOptions::clique_cover_threshold`] of them, and with
//! the plain candidate count otherwise.

use alloc::format;
use alloc::vec::Vec;

use crate::{Bitset, Error, Graph, Result};

/// Caps on the search effort. Exhausting either cap turns an exact answer
/// into a lower bound; it is never an error.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Result<Self> {
        if max_nodes == 0 || !(max_seconds > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "search budget must be positive, got {max_nodes} nodes / {max_seconds} s"
            )));
        }
        Ok(Self {
            max_nodes,
            max_seconds,
        })
    }

    pub fn unlimited() -> Self {
        Self {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: max_nodes.max(1),
            max_seconds: f64::INFINITY,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 50_000_000,
            max_seconds: 60.0,
        }
    }
}

/// Source of elapsed wall-clock time for `max_seconds`.
pub trait Clock {
    fn elapsed_seconds(&self) -> f64;
}

/// A clock that never advances; only `max_nodes` is enforced.
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed_seconds(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SearchStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CountStatus {
    Exact,
    Partial,
}

/// A verified independent set, vertices sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetCertificate {
    vertices: Vec<usize>,
}

impl IndependentSetCertificate {
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        if !is_independent_set(g, &vertices)? {
            let (u, v) = first_conflict(g, &vertices).expect("not independent");
            return Err(Error::InvalidArgument(format!(
                "vertices {u} and {v} are adjacent"
            )));
        }
        vertices.sort_unstable();
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

fn first_conflict(g: &Graph, s: &[usize]) -> Option<(usize, usize)> {
    for (k, &u) in s.iter().enumerate() {
        for &v in &s[k + 1..] {
            if g.has_edge(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// True iff no two members of `s` are adjacent. Duplicate or out-of-range
/// indices are errors.
pub fn is_independent_set(g: &Graph, s: &[usize]) -> Result<bool> {
    let mut seen = Bitset::new(g.n());
    for &v in s {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        if seen.contains(v) {
            return Err(Error::DuplicateVertex(v));
        }
        seen.insert(v);
    }
    Ok(s.iter().all(|&v| seen.intersection_count(g.row(v)) == 0))
}

/// Number of cliques in a greedy clique cover of `candidates`: an upper
/// bound on the largest independent set inside `candidates`.
pub fn clique_cover_bound(g: &Graph, candidates: &Bitset) -> usize {
    let mut rest = candidates.clone();
    let mut cliques = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut extend = rest.clone();
        extend.intersect_with(g.row(v));
        while let Some(w) = extend.first() {
            rest.remove(w);
            extend.remove(w);
            extend.intersect_with(g.row(w));
        }
        cliques += 1;
    }
    cliques
}

/// Minimum-degree greedy independent set, ties to the lowest index.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let mut cand = Bitset::full(g.n());
    let mut out = Vec::new();
    while !cand.is_empty() {
        let v = cand
            .iter()
            .min_by_key(|&v| (cand.intersection_count(g.row(v)), v))
            .expect("non-empty");
        out.push(v);
        cand.difference_with(g.row(v));
        cand.remove(v);
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Clique-cover bounding is used when the candidate set is at most this
    /// large.
    pub clique_cover_threshold: usize,
    /// Known independent set used as the initial incumbent.
    pub seed: Option<Vec<usize>>,
}

impl SearchOptions {
    pub fn new() -> Self {
        Self {
            clique_cover_threshold: 64,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: Vec<usize>) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub size: usize,
    pub certificate: IndependentSetCertificate,
    pub status: SearchStatus,
    pub nodes: u64,
}

/// Exact maximum independent set under a node budget (no wall clock).
pub fn max_independent_set(g: &Graph, budget: SearchBudget) -> SearchOutcome {
    max_independent_set_with(g, budget, &SearchOptions::new(), &NoClock)
        .expect("no seed to validate")
}

pub fn max_independent_set_with(
    g: &Graph,
    budget: SearchBudget,
    options: &SearchOptions,
    clock: &dyn Clock,
) -> Result<SearchOutcome> {
    let incumbent = initial_incumbent(g, options)?;
    let sub = search_subproblem(
        g,
        &[],
        Bitset::full(g.n()),
        incumbent.len(),
        budget,
        options,
        clock,
    );
    let best = sub.improved.unwrap_or(incumbent);
    Ok(SearchOutcome {
        size: best.len(),
        certificate: IndependentSetCertificate::new(g, best)?,
        status: if sub.complete {
            SearchStatus::Exact
        } else {
            SearchStatus::LowerBound
        },
        nodes: sub.nodes,
    })
}

/// Larger of the validated seed and the greedy set.
pub fn initial_incumbent(g: &Graph, options: &SearchOptions) -> Result<Vec<usize>> {
    let greedy = greedy_independent_set(g);
    match &options.seed {
        Some(seed) => {
            let cert = IndependentSetCertificate::new(g, seed.clone())?;
            Ok(if cert.size() >= greedy.len() {
                cert.vertices
            } else {
                greedy
            })
        }
        None => Ok(greedy),
    }
}

/// Result of searching one subtree.
#[derive(Clone, Debug)]
pub struct SubproblemOutcome {
    /// An independent set strictly larger than the floor, if one was found.
    pub improved: Option<Vec<usize>>,
    /// Whether the subtree was fully explored.
    pub complete: bool,
    pub nodes: u64,
}

/// Searches for an independent set `forced ∪ S` with `S ⊆ candidates`,
/// larger than `floor`. `forced` must be independent and have no
/// neighbours in `candidates`.
pub fn search_subproblem(
    g: &Graph,
    forced: &[usize],
    candidates: Bitset,
    floor: usize,
    budget: SearchBudget,
    options: &SearchOptions,
    clock: &dyn Clock,
) -> SubproblemOutcome {
    let mut s = Searcher {
        g,
        budget,
        clock,
        threshold: options.clique_cover_threshold,
        nodes: 0,
        stopped: false,
        current: forced.to_vec(),
        best_len: floor,
        best: None,
    };
    s.expand(candidates);
    SubproblemOutcome {
        improved: s.best,
        complete: !s.stopped,
        nodes: s.nodes,
    }
}

/// Root branches in the order the sequential search visits them: the
/// `i`-th entry includes vertex `v_i` after excluding `v_1..v_{i-1}`.
pub fn root_branches(g: &Graph, candidates: &Bitset) -> Vec<(usize, Bitset)> {
    let mut rest = candidates.clone();
    let mut out = Vec::new();
    while let Some((v, _)) = pick_branch_vertex(g, &rest) {
        let mut next = rest.clone();
        next.difference_with(g.row(v));
        next.remove(v);
        out.push((v, next));
        rest.remove(v);
    }
    out
}

/// Maximum-degree candidate within `cand`, ties to the lowest index.
fn pick_branch_vertex(g: &Graph, cand: &Bitset) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for v in cand.iter() {
        let d = cand.intersection_count(g.row(v));
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((v, d));
        }
    }
    best
}

struct Searcher<'a> {
    g: &'a Graph,
    budget: SearchBudget,
    clock: &'a dyn Clock,
    threshold: usize,
    nodes: u64,
    stopped: bool,
    current: Vec<usize>,
    best_len: usize,
    best: Option<Vec<usize>>,
}

impl Searcher<'_> {
    fn tick(&mut self) -> bool {
        if self.stopped {
            return false;
        }
        if self.nodes >= self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024)
                && self.budget.max_seconds.is_finite()
                && self.clock.elapsed_seconds() > self.budget.max_seconds)
        {
            self.stopped = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn record(&mut self, extra: impl Iterator<Item = usize>) {
        let mut set = self.current.clone();
        set.extend(extra);
        if set.len() > self.best_len {
            self.best_len = set.len();
            set.sort_unstable();
            self.best = Some(set);
        }
    }

    fn expand(&mut self, mut cand: Bitset) {
        loop {
            if !self.tick() {
                return;
            }
            let count = cand.count();
            if count == 0 {
                self.record(core::iter::empty());
                return;
            }
            let bound = if count <= self.threshold {
                clique_cover_bound(self.g, &cand)
            } else {
                count
            };
            if self.current.len() + bound <= self.best_len {
                return;
            }
            let (v, deg) = pick_branch_vertex(self.g, &cand).expect("non-empty");
            if deg == 0 {
                // every candidate is isolated within the candidate set
                self.record(cand.iter());
                return;
            }
            self.current.push(v);
            let mut next = cand.clone();
            next.difference_with(self.g.row(v));
            next.remove(v);
            self.expand(next);
            self.current.pop();
            if self.stopped {
                return;
            }
            cand.remove(v);
        }
    }
}

/// Counts independent sets of exactly `size` vertices.
pub fn count_independent_sets(
    g: &Graph,
    size: usize,
    budget: SearchBudget,
    clock: &dyn Clock,
) -> (u128, CountStatus) {
    let mut c = Counter {
        g,
        budget,
        clock,
        nodes: 0,
        stopped: false,
        total: 0,
    };
    c.count(Bitset::full(g.n()), size);
    let status = if c.stopped {
        CountStatus::Partial
    } else {
        CountStatus::Exact
    };
    (c.total, status)
}

struct Counter<'a> {
    g: &'a Graph,
    budget: SearchBudget,
    clock: &'a dyn Clock,
    nodes: u64,
    stopped: bool,
    total: u128,
}

impl Counter<'_> {
    fn count(&mut self, cand: Bitset, need: usize) {
        if self.stopped {
            return;
        }
        if self.nodes >= self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024)
                && self.budget.max_seconds.is_finite()
                && self.clock.elapsed_seconds() > self.budget.max_seconds)
        {
            self.stopped = true;
            return;
        }
        self.nodes += 1;
        if need == 0 {
            self.total += 1;
            return;
        }
        let mut rest = cand;
        loop {
            let count = rest.count();
            if count < need || (count <= 64 && clique_cover_bound(self.g, &rest) < need) {
                return;
            }
            let v = rest.first().expect("count >= need >= 1");
            rest.remove(v);
            let mut next = rest.clone();
            next.difference_with(self.g.row(v));
            self.count(next, need - 1);
            if self.stopped {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{hamming_graph, strong_product};
    use alloc::vec;

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                (0..n).all(|u| {
                    mask >> u & 1 == 0
                        || (u + 1..n).all(|v| mask >> v & 1 == 0 || !g.has_edge(u, v))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn fixture_set_is_independent() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        assert!(is_independent_set(&g, &[18, 14, 1, 29]).unwrap());
        assert!(is_independent_set(&g, &[7]).unwrap());
        assert!(!is_independent_set(&g, &[0, 1]).unwrap());
        assert_eq!(
            is_independent_set(&g, &[1, 1]),
            Err(Error::DuplicateVertex(1))
        );
        assert!(matches!(
            is_independent_set(&g, &[32]),
            Err(Error::VertexOutOfRange { vertex: 32, n: 32 })
        ));
    }

    #[test]
    fn alpha_of_cube5_graph() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let out = max_independent_set(&g, SearchBudget::unlimited());
        assert_eq!(out.size, 4);
        assert_eq!(out.status, SearchStatus::Exact);
        assert!(is_independent_set(&g, out.certificate.vertices()).unwrap());
    }

    #[test]
    fn small_cases() {
        let k5 = Graph::complete(5);
        let out = max_independent_set(&k5, SearchBudget::unlimited());
        assert_eq!((out.size, out.status), (1, SearchStatus::Exact));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(brute_alpha(&c5), 2);
        assert_eq!(max_independent_set(&c5, SearchBudget::unlimited()).size, 2);
        assert_eq!(
            max_independent_set(&Graph::empty(6), SearchBudget::unlimited()).size,
            6
        );
    }

    #[test]
    fn clique_cover_cases() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        assert_eq!(clique_cover_bound(&g, &Bitset::new(32)), 0);
        assert_eq!(clique_cover_bound(&g, &Bitset::from_indices(32, [5])), 1);
        let b = clique_cover_bound(&g, &Bitset::full(32));
        assert!((4..=32).contains(&b));
    }

    #[test]
    fn budget_exhaustion_is_a_status() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let p = strong_product(&g, &g).unwrap();
        let out = max_independent_set(&p, SearchBudget::nodes(50));
        assert_eq!(out.status, SearchStatus::LowerBound);
        assert!(out.size >= 16);
        assert!(is_independent_set(&p, out.certificate.vertices()).unwrap());
    }

    #[test]
    fn seed_is_validated_and_used() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let opts = SearchOptions::new().with_seed(vec![0, 1]);
        assert!(max_independent_set_with(&g, SearchBudget::nodes(1), &opts, &NoClock).is_err());
        let opts = SearchOptions::new().with_seed(vec![18, 14, 1, 29]);
        let out = max_independent_set_with(&g, SearchBudget::nodes(1), &opts, &NoClock).unwrap();
        assert_eq!(out.size, 4);
        assert_eq!(out.certificate.vertices(), &[1, 14, 18, 29]);
    }

    #[test]
    fn counting() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            count_independent_sets(&c4, 2, SearchBudget::unlimited(), &NoClock),
            (2, CountStatus::Exact)
        );
        let k3 = Graph::complete(3);
        assert_eq!(
            count_independent_sets(&k3, 1, SearchBudget::unlimited(), &NoClock),
            (3, CountStatus::Exact)
        );
        assert_eq!(
            count_independent_sets(&k3, 0, SearchBudget::unlimited(), &NoClock),
            (1, CountStatus::Exact)
        );
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let (_, status) = count_independent_sets(&g, 4, SearchBudget::nodes(3), &NoClock);
        assert_eq!(status, CountStatus::Partial);
    }

    #[test]
    fn root_branches_cover_the_search() {
        let c5 = Graph::cycle(5).unwrap();
        let branches = root_branches(&c5, &Bitset::full(5));
        assert_eq!(branches.len(), 5);
        assert_eq!(branches[0].0, 0);
        assert_eq!(branches[0].1.iter().collect::<Vec<_>>(), vec![2, 3]);
    }
}
