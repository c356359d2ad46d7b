//! Solvers against exhaustive oracles on small random inputs.

mod common;

use bpl_core::coloring::{acyclic_chromatic_exact, scol_exact, scol_greedy, scol_of_order, sreach};
use bpl_core::constructions::{validate_model, validate_subdivision};
use bpl_core::densest::max_subgraph_density;
use bpl_core::expansion::{nabla, topo_nabla};
use bpl_core::numbers::{
    cover_number, crossing_multigraph_density, gap_cover_number, gap_number, matching_planar_number, min_vertex_cover,
    verify_cover, verify_gap, verify_gap_cover,
};
use bpl_core::treewidth::{treewidth_exact, validate_tree_decomposition};
use bpl_core::{degeneracy, Graph, VertexOrdering};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn small_graph(seed: u64, max_n: u32) -> (Rng8, Graph) {
    let mut rng = rng(seed);
    let n = rng.random_range(1..=max_n);
    let max_m = (n * (n - 1) / 2) as usize;
    let m = rng.random_range(0..=max_m.min(2 * n as usize + 2));
    let g = random_graph(&mut rng, n, m);
    (rng, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gap_number_is_the_minimum_charging(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(3..=7);
        let m = rng.random_range(2..=9);
        let g = random_graph(&mut rng, n, m);
        let a = random_abstract(&mut rng, g, 10, 3);
        let (k, cert) = gap_number(&a);
        prop_assert_eq!(k, brute_gap(&a));
        prop_assert_eq!(k, ceil(crossing_multigraph_density(&a)));
        prop_assert_eq!(crossing_multigraph_density(&a), brute_crossing_density(&a));
        prop_assert!(verify_gap(&a, &cert).unwrap());
    }

    #[test]
    fn cover_numbers_match_subset_search(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(4..=9);
        let m = rng.random_range(3..=11);
        let g = random_graph(&mut rng, n, m);
        let a = random_independent(&mut rng, g, 8);
        let (kc, cc) = cover_number(&a);
        prop_assert_eq!(kc, brute_cover(&a));
        prop_assert!(verify_cover(&a, &cc).unwrap());
        prop_assert!(matching_planar_number(&a) <= kc);
        let (kg, gc) = gap_cover_number(&a, None);
        prop_assert!(gc.optimal);
        prop_assert_eq!(kg, brute_gap_cover(&a));
        prop_assert!(verify_gap_cover(&a, &gc).unwrap());
        prop_assert!(kg <= kc);
        prop_assert!(kg <= gap_number(&a).0);
    }

    #[test]
    fn vertex_cover_matches_subset_search(seed in any::<u64>()) {
        let (_, g) = small_graph(seed, 10);
        let best = brute_vertex_cover(g.edges());
        let found = min_vertex_cover(g.edges(), g.n()).unwrap();
        prop_assert_eq!(found.len(), best);
        prop_assert!(g.edges().iter().all(|(u, v)| found.contains(u) || found.contains(v)));
        if best > 0 {
            prop_assert!(min_vertex_cover(g.edges(), best - 1).is_none());
        }
    }

    #[test]
    fn densest_subgraph_matches_subset_search(seed in any::<u64>()) {
        let (_, g) = small_graph(seed, 11);
        let d = max_subgraph_density(&g);
        prop_assert_eq!(d.density, brute_densest(&g));
    }

    #[test]
    fn treewidth_matches_elimination_orders(seed in any::<u64>()) {
        let (_, g) = small_graph(seed, 8);
        let (w, td) = treewidth_exact(&g).unwrap();
        prop_assert_eq!(w, brute_treewidth(&g));
        prop_assert!(validate_tree_decomposition(&g, &td).is_empty());
        prop_assert_eq!(td.width(), w);
    }

    #[test]
    fn strong_reach_matches_path_search(seed in any::<u64>(), r in 0usize..4) {
        let (mut rng, g) = small_graph(seed, 9);
        let mut order = g.vertices().to_vec();
        order.shuffle(&mut rng);
        let ord = VertexOrdering::new(order);
        let adj = adjacency(&g);
        let rank: Vec<usize> = g.vertices().iter().map(|&v| ord.rank(v)).collect();
        for (i, &v) in g.vertices().iter().enumerate() {
            let ours: Vec<_> = sreach(&g, &ord, v, r).into_iter().collect();
            let theirs: Vec<_> = brute_sreach(&adj, &rank, i, r).into_iter().map(|j| g.vertices()[j]).collect();
            prop_assert_eq!(ours, theirs);
        }
    }
}

#[test]
fn strong_coloring_number_matches_all_orders() {
    for seed in 0..40 {
        let (_, g) = small_graph(seed, 7);
        for r in 0..=3 {
            let (s, ord) = scol_exact(&g, r).unwrap();
            assert_eq!(s, brute_scol(&g, r), "seed {seed} r {r}");
            assert_eq!(scol_of_order(&g, &ord, r), s);
            assert!(scol_greedy(&g, r).0 >= s);
        }
        let (s1, _) = scol_exact(&g, 1).unwrap();
        assert_eq!(s1, degeneracy(&g).0 + 1, "seed {seed}");
    }
}

#[test]
fn acyclic_chromatic_number_matches_all_colorings() {
    for seed in 0..40 {
        let (_, g) = small_graph(seed, 8);
        let (chi, col) = acyclic_chromatic_exact(&g).unwrap();
        assert_eq!(chi, brute_acyclic(&g), "seed {seed}");
        let colors: Vec<usize> = g.vertices().iter().map(|v| col[v]).collect();
        assert!(is_acyclic_coloring(&g, &colors));
        assert_eq!(colors.iter().collect::<std::collections::BTreeSet<_>>().len(), chi);
    }
}

#[test]
fn shallow_minor_density_matches_partitions() {
    for seed in 0..30 {
        let (_, g) = small_graph(seed, 7);
        for r in 0..=2 {
            let (value, model) = nabla(&g, r).unwrap();
            assert_eq!(value, brute_nabla(&g, r), "seed {seed} r {r}");
            assert!(validate_model(&model).is_empty());
            assert!(model.r <= r);
            assert_eq!(model.pattern.density(), value);
        }
    }
}

#[test]
fn topological_minor_density_matches_subdivision_search() {
    for seed in 0..30 {
        let (mut rng, _) = small_graph(seed, 7);
        let n = rng.random_range(2..=7);
        let m = rng.random_range(1..=((n * (n - 1) / 2) as usize).min(12));
        let g = random_graph(&mut rng, n, m);
        for r in 0..=2 {
            let (value, w) = topo_nabla(&g, r).unwrap();
            assert_eq!(value, brute_topo_nabla(&g, r), "seed {seed} r {r}");
            assert!(validate_subdivision(&g, &w).is_empty());
            assert!(w.paths.values().all(|p| p.len() <= 2 * r + 2));
            assert_eq!(w.pattern.density(), value);
            assert!(value <= nabla(&g, r).unwrap().0);
        }
    }
}

#[test]
fn named_graphs() {
    for (name, g) in corpus_graphs().into_iter().filter(|(_, g)| g.n() <= 8) {
        assert_eq!(max_subgraph_density(&g).density, brute_densest(&g), "{name}");
        assert_eq!(treewidth_exact(&g).unwrap().0, brute_treewidth(&g), "{name}");
        assert_eq!(acyclic_chromatic_exact(&g).unwrap().0, brute_acyclic(&g), "{name}");
    }
    assert_eq!(treewidth_exact(&Graph::complete(6)).unwrap().0, 5);
    assert_eq!(treewidth_exact(&Graph::cycle(8)).unwrap().0, 2);
    assert_eq!(acyclic_chromatic_exact(&Graph::complete_bipartite(3, 3)).unwrap().0, 4);
}
