use forest_algebra::forest::{self, DEFAULT_MAX_FORESTS};
use forest_algebra::recovery::recover_tutte;
use forest_algebra::tutte::{self, TutteOptions};
use forest_algebra::verify::{self, Bounds, Method};
use forest_algebra::{HilbertFunction, Multigraph};
use proptest::prelude::*;

fn multigraph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

fn all_methods(g: &Multigraph, t: u32) -> Vec<HilbertFunction> {
    Method::ALL.iter().map(|&m| verify::hilbert(g, t, m, &Bounds::default()).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn methods_agree(g in multigraph(4, 5), t in 1u32..=2) {
        let hs = all_methods(&g, t);
        for h in &hs[1..] {
            prop_assert_eq!(h, &hs[0]);
        }
        prop_assert_eq!(hs[0].dims.len(), t as usize * g.edge_count() + 1);
        prop_assert_eq!(hs[0].dims[0], 1);
    }

    #[test]
    fn deletion_contraction_matches_activity_expansion(g in multigraph(5, 6)) {
        let table = forest::activity_table(&g, DEFAULT_MAX_FORESTS).unwrap();
        prop_assert_eq!(tutte::tutte(&g).unwrap().poly, tutte::tutte_via_activity(&table).poly);
    }

    #[test]
    fn j_poly_is_tutte_of_clone(g in multigraph(4, 4), t in 1u32..=3) {
        prop_assert!(tutte::j_poly_clone_check(&g, t, TutteOptions::default()).unwrap());
        prop_assert!(forest::clone_activity_check(&g, t, DEFAULT_MAX_FORESTS).unwrap().passed());
    }

    #[test]
    fn edge_order_is_irrelevant(g in multigraph(4, 5), seed in any::<u64>()) {
        let base = forest::activity_table(&g, DEFAULT_MAX_FORESTS).unwrap();
        let h = forest::hilbert_from_forests(&g, 2, DEFAULT_MAX_FORESTS).unwrap();
        for perm in verify::random_orders(&g, seed, 3) {
            prop_assert_eq!(&forest::activity_table(&perm, DEFAULT_MAX_FORESTS).unwrap(), &base);
            prop_assert_eq!(&verify::hilbert(&perm, 2, Method::Quotient, &Bounds::default()).unwrap(), &h);
        }
    }

    #[test]
    fn recovery_inverts_hilbert(g in multigraph(4, 6)) {
        prop_assume!(g.is_connected() && g.loop_count() == 0);
        let n = g.vertex_count();
        let h = forest::hilbert_from_forests(&g, n as u32, DEFAULT_MAX_FORESTS).unwrap();
        prop_assert_eq!(recover_tutte(&h, n as u32, n).unwrap().poly, tutte::tutte(&g).unwrap().poly);
    }

    #[test]
    fn hilbert_json_round_trip(g in multigraph(3, 4), t in 1u32..=3) {
        let h = forest::hilbert_from_forests(&g, t, DEFAULT_MAX_FORESTS).unwrap();
        let back: HilbertFunction = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        prop_assert_eq!(back, h);
    }
}
