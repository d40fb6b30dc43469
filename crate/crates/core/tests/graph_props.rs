use capax_core::graph::{hamming_graph, strong_power, strong_product};
use capax_core::independence::{
    count_independent_sets, is_independent_set, max_independent_set, NoClock, SearchStatus,
};
use capax_core::{Graph, SearchBudget};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| g.has_edge(u, v))
                .fold(0, |m, v| m | 1 << v)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || adj[u] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn brute_count(g: &Graph, size: usize) -> u128 {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == size)
        .filter(|&s| {
            (0..n).all(|u| {
                (u + 1..n).all(|v| !(s >> u & 1 == 1 && s >> v & 1 == 1 && g.has_edge(u, v)))
            })
        })
        .count() as u128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strong_product_matches_definition(g in graph_strategy(6), h in graph_strategy(6)) {
        let p = strong_product(&g, &h).unwrap();
        let m = h.n();
        prop_assert_eq!(p.n(), g.n() * m);
        for a in 0..p.n() {
            for b in 0..p.n() {
                let (g1, h1, g2, h2) = (a / m, a % m, b / m, b % m);
                let close_g = g1 == g2 || g.has_edge(g1, g2);
                let close_h = h1 == h2 || h.has_edge(h1, h2);
                prop_assert_eq!(p.has_edge(a, b), a != b && close_g && close_h);
            }
        }
    }

    #[test]
    fn product_commutes_under_index_swap(g in graph_strategy(5), h in graph_strategy(5)) {
        let gh = strong_product(&g, &h).unwrap();
        let hg = strong_product(&h, &g).unwrap();
        let (n, m) = (g.n(), h.n());
        let swap = |v: usize| (v % m) * n + v / m;
        for a in 0..n * m {
            for b in 0..n * m {
                prop_assert_eq!(gh.has_edge(a, b), hg.has_edge(swap(a), swap(b)));
            }
        }
    }

    #[test]
    fn complement_edges(g in graph_strategy(12)) {
        let c = g.complement();
        let n = g.n();
        prop_assert_eq!(g.edge_count() + c.edge_count(), n * (n - 1) / 2);
        prop_assert!(c.is_well_formed());
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn alpha_matches_brute_force(g in graph_strategy(16)) {
        let out = max_independent_set(&g, SearchBudget::unlimited());
        prop_assert_eq!(out.status, SearchStatus::Exact);
        prop_assert_eq!(out.size, brute_alpha(&g));
        prop_assert!(is_independent_set(&g, out.certificate.vertices()).unwrap());
    }

    #[test]
    fn count_matches_brute_force(g in graph_strategy(11)) {
        let a = brute_alpha(&g);
        let (c, _) = count_independent_sets(&g, a, SearchBudget::unlimited(), &NoClock);
        prop_assert_eq!(c, brute_count(&g, a));
    }

    #[test]
    fn removing_an_edge_never_lowers_alpha(g in graph_strategy(12), pick in any::<usize>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick % edges.len()];
        let before = max_independent_set(&g, SearchBudget::unlimited()).size;
        let after = max_independent_set(&g.without_edge(u, v), SearchBudget::unlimited()).size;
        prop_assert!(after >= before && after <= before + 1);
    }

    #[test]
    fn alpha_super_multiplicative(g in graph_strategy(6), h in graph_strategy(6)) {
        let ag = max_independent_set(&g, SearchBudget::unlimited());
        let ah = max_independent_set(&h, SearchBudget::unlimited());
        let p = strong_product(&g, &h).unwrap();
        let ap = max_independent_set(&p, SearchBudget::unlimited());
        prop_assert_eq!(ap.status, SearchStatus::Exact);
        prop_assert!(ap.size >= ag.size * ah.size);
        let m = h.n();
        let witness: Vec<usize> = ag.certificate.vertices().iter()
            .flat_map(|&a| ah.certificate.vertices().iter().map(move |&b| a * m + b))
            .collect();
        prop_assert!(is_independent_set(&p, &witness).unwrap());
    }
}

#[test]
fn c5_square_has_five_independent_vertices() {
    let c5 = Graph::cycle(5).unwrap();
    let sq = strong_power(&c5, 2).unwrap();
    let set: Vec<usize> = (0..5).map(|i| i * 5 + (2 * i) % 5).collect();
    assert!(is_independent_set(&sq, &set).unwrap());
    assert_eq!(max_independent_set(&sq, SearchBudget::unlimited()).size, 5);
}

#[test]
fn hamming_graph_degrees() {
    // degree of the distance-D graph on m bits is Σ_{d∈D} C(m, d)
    for (m, ds, deg) in [
        (5, vec![1, 2], 15),
        (4, vec![1], 4),
        (6, vec![2, 4], 30),
        (3, vec![3], 1),
    ] {
        let g = hamming_graph(m, &ds).unwrap();
        assert_eq!(g.regular_degree(), Some(deg));
        assert_eq!(g.edge_count(), (1 << m) * deg / 2);
    }
}

#[test]
fn four_cube_alpha_and_count_agree_with_brute_force() {
    // the 4-cube version is small enough for the subset oracle
    let g = hamming_graph(4, &[1, 2]).unwrap();
    let out = max_independent_set(&g, SearchBudget::unlimited());
    assert_eq!(out.size, brute_alpha(&g));
    let (c, _) = count_independent_sets(&g, out.size, SearchBudget::unlimited(), &NoClock);
    assert_eq!(c, brute_count(&g, out.size));
}
