mod common;

use common::{brute_force_mst, is_planar_small, labels, max_planar_weight, random_dense, rng, EdgeSet};
use infonet::corrnet::WeightedGraph;
use infonet::filtergraph::*;
use infonet::matrix::SquareMatrix;
use infonet::toy::toy_network;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn complete(n: usize) -> EdgeSet {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

#[test]
fn kuratowski_oracle_sanity() {
    assert!(!is_planar_small(5, &complete(5)));
    let mut k5_minus = complete(5);
    k5_minus.remove(&(0, 1));
    assert!(is_planar_small(5, &k5_minus));
    let k33: EdgeSet = [0, 1, 2].iter().flat_map(|&a| [3, 4, 5].map(|b| (a, b))).collect();
    assert!(!is_planar_small(6, &k33));
    // K3,3 with one edge subdivided through vertex 6
    let mut sub = k33.clone();
    sub.remove(&(0, 3));
    sub.insert((0, 6));
    sub.insert((3, 6));
    assert!(!is_planar_small(7, &sub));
    // K5 with one edge subdivided twice
    let mut k5_sub = complete(5);
    k5_sub.remove(&(1, 2));
    k5_sub.extend([(1, 5), (5, 6), (2, 6)]);
    assert!(!is_planar_small(7, &k5_sub));
    // octahedron is maximal planar
    let mut oct = complete(6);
    for e in [(0, 1), (2, 3), (4, 5)] {
        oct.remove(&e);
    }
    assert!(is_planar_small(6, &oct));
}

#[test]
fn toy_tmfg_keeps_zero_weight_edges_out_of_paths() {
    let g = toy_network();
    let t = tmfg(&g).unwrap();
    assert_eq!(t.edges().len(), 9);
    assert!(planarity_certificate(&t).is_valid());
    let zero: Vec<_> = t.zero_weight_edges().collect();
    for e in &zero {
        assert!(!t.graph().has_edge(e.u, e.v));
    }
    assert_eq!(t.graph().edge_count(), 9 - zero.len());
    // every positive toy edge survives: K5 minus one edge drops a zero pair
    assert_eq!(t.graph().edge_count(), g.edge_count());
}

#[test]
fn tmfg_quality_against_exhaustive_optimum() {
    let toy = toy_network();
    let greedy = tmfg(&toy).unwrap().retained_weight();
    let best = max_planar_weight(toy.weights());
    assert!(greedy >= 0.95 * best, "{greedy} vs {best}");
    let mut r = rng(5);
    for n in [5, 6, 7, 5, 6, 7] {
        let g = random_dense(&mut r, n, 0.0, 1.0);
        let greedy = tmfg(&g).unwrap().retained_weight();
        let best = max_planar_weight(g.weights());
        assert!(greedy <= best + 1e-12);
        assert!(greedy >= 0.95 * best, "n={n}: {greedy} vs {best}");
    }
}

#[test]
fn mst_matches_exhaustive_tree_search() {
    let mut r = rng(8);
    for metric in [MstMetric::Mantegna, MstMetric::InverseWeight] {
        for _ in 0..3 {
            let g = random_dense(&mut r, 8, 0.05, 0.95);
            let t = mst(&g, metric).unwrap();
            let (cost, edges) = brute_force_mst(8, |u, v| metric.distance(g.weight(u, v)));
            assert_eq!(t.edge_set(), edges);
            let got: f64 = t.edges().iter().map(|e| metric.distance(e.weight)).sum();
            assert!((got - cost).abs() < 1e-12);
        }
    }
}

#[test]
fn mst_of_disconnected_graph_names_a_node() {
    let g = WeightedGraph::from_edges(labels(4), &[(0, 1, 0.5), (2, 3, 0.4)]).unwrap();
    let err = mst(&g, MstMetric::Mantegna).unwrap_err().to_string();
    assert!(err.contains("n0"), "{err}");
}

#[test]
fn edge_list_round_trip() {
    let g = random_dense(&mut rng(3), 12, 0.0, 1.0);
    for fg in [tmfg(&g).unwrap(), mst(&g, MstMetric::Mantegna).unwrap()] {
        let meta = FilteredGraphMetadata::describe(&fg, None);
        let mut buf = Vec::new();
        write_edge_list(&fg, &mut buf).unwrap();
        let json = serde_json::to_string(&meta).unwrap();
        let meta2: FilteredGraphMetadata = serde_json::from_str(&json).unwrap();
        let back = read_filtered_graph(buf.as_slice(), &meta2).unwrap();
        assert_eq!(back.edges(), fg.edges());
        assert_eq!(back.faces(), fg.faces());
        assert_eq!(back.graph(), fg.graph());
    }
}

fn dense_strategy(lo: usize, hi: usize) -> impl Strategy<Value = WeightedGraph> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| random_dense(&mut rng(seed), n, 0.0, 1.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tmfg_is_a_triangulation(g in dense_strategy(3, 60)) {
        let n = g.n();
        let t = tmfg(&g).unwrap();
        prop_assert_eq!(t.edges().len(), 3 * (n - 2));
        prop_assert_eq!(t.edge_set().len(), 3 * (n - 2));
        prop_assert_eq!(t.faces().len(), 2 * n - 4);
        prop_assert!(planarity_certificate(&t).is_valid());
        prop_assert!(t.is_connected());
        if n >= 4 {
            for v in 0..n {
                prop_assert!(t.is_connected_without(Some(v)), "cut vertex {v}");
            }
        }
        let total: f64 = t.edges().iter().map(|e| e.weight).sum();
        prop_assert!((total - t.retained_weight()).abs() < 1e-9);
    }

    #[test]
    fn small_tmfg_is_planar(g in dense_strategy(4, 7)) {
        let t = tmfg(&g).unwrap();
        prop_assert!(is_planar_small(g.n(), &t.edge_set()));
    }

    #[test]
    fn tmfg_ignores_uniform_scaling(g in dense_strategy(4, 40), a in prop::sample::select(vec![0.1, 3.0, 10.0])) {
        let t = tmfg(&g).unwrap();
        let s = tmfg(&g.scaled(a).unwrap()).unwrap();
        prop_assert_eq!(t.edge_set(), s.edge_set());
        prop_assert!((s.retained_weight() - a * t.retained_weight()).abs() <= 1e-12 * s.retained_weight());
    }

    #[test]
    fn tmfg_commutes_with_relabelling(g in dense_strategy(4, 30), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut rng(seed));
        let t = tmfg(&g).unwrap();
        let p = tmfg(&g.permuted(&order)).unwrap();
        let mapped: EdgeSet = p
            .edge_set()
            .into_iter()
            .map(|(a, b)| (order[a].min(order[b]), order[a].max(order[b])))
            .collect();
        prop_assert_eq!(mapped, t.edge_set());
    }

    #[test]
    fn mst_matches_exhaustive_search_small(g in dense_strategy(3, 7)) {
        let t = mst(&g, MstMetric::Mantegna).unwrap();
        prop_assert_eq!(t.edges().len(), g.n() - 1);
        prop_assert!(t.is_connected());
        let (_, edges) = brute_force_mst(g.n(), |u, v| MstMetric::Mantegna.distance(g.weight(u, v)));
        prop_assert_eq!(t.edge_set(), edges);
    }

    #[test]
    fn mst_is_idempotent(g in dense_strategy(3, 30)) {
        let t = mst(&g, MstMetric::Mantegna).unwrap();
        let again = mst(t.graph(), MstMetric::Mantegna).unwrap();
        prop_assert_eq!(again.edge_set(), t.edge_set());
    }
}

#[test]
fn tmfg_of_unit_weights_is_deterministic() {
    let n = 10;
    let mut w = SquareMatrix::filled(n, 1.0);
    for i in 0..n {
        w[(i, i)] = 0.0;
    }
    let g = WeightedGraph::new(labels(n), w).unwrap();
    let a = tmfg(&g).unwrap();
    let b = tmfg(&g).unwrap();
    assert_eq!(a.edges(), b.edges());
    assert!(planarity_certificate(&a).is_valid());
}
