use cwsdiag::diagdist::{cls_map, diagonal_distance_with, oracle_diagonal_distance};
use cwsdiag::graph::{from_graph6, random_graph, to_graph6, Graph};
use cwsdiag::search::{compatibility_graph, max_clique, search_code, CliqueBudget, CliqueMode};
use cwsdiag::structure::{property_a_check, ColumnSystem};
use cwsdiag::Exec;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diag_distance_at_most_min_degree_plus_one(g in arb_graph(12)) {
        let r = diagonal_distance_with(&g, Exec::Sequential).unwrap();
        prop_assert!(r.value <= g.min_degree() + 1);
        prop_assert!(cls_map(&g, &r.witness_pauli).unwrap().is_zero());
        prop_assert_eq!(r.witness_pauli.symplectic_weight(), r.value);
    }

    #[test]
    fn engines_agree_and_ignore_the_execution_mode(g in arb_graph(10)) {
        let seq = diagonal_distance_with(&g, Exec::Sequential).unwrap();
        let par = diagonal_distance_with(&g, Exec::Parallel).unwrap();
        let oracle = oracle_diagonal_distance(&g).unwrap();
        prop_assert_eq!(&seq.witness_u, &par.witness_u);
        prop_assert_eq!(seq.value, oracle.value);
        prop_assert_eq!(&seq.witness_u, &oracle.witness_u);
    }

    #[test]
    fn property_a_iff_no_four_cycle(g in arb_graph(12)) {
        prop_assert_eq!(property_a_check(&ColumnSystem::from_graph(&g)).holds, !g.has_four_cycle());
    }

    #[test]
    fn graph6_round_trips(g in arb_graph(30)) {
        let s = to_graph6(&g).unwrap();
        prop_assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn compatibility_is_a_cayley_graph(x in 0u64..256, y in 0u64..256, t in 0u64..256) {
        let cg = compatibility_graph(&cwsdiag::graph::cycle(8), 3).unwrap();
        prop_assert_eq!(cg.compatible(x, y), cg.compatible(x ^ t, y ^ t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_clique_dominates_greedy(g in arb_graph(18), seed in any::<u64>()) {
        let b = CliqueBudget::default();
        let ex = max_clique(&g, CliqueMode::Exact, b).unwrap();
        let gr = max_clique(&g, CliqueMode::Greedy { restarts: 6, seed }, b).unwrap();
        prop_assert!(ex.vertices.len() >= gr.vertices.len());
    }

    #[test]
    fn search_results_meet_the_requested_distance(g in arb_graph(7), d in 1usize..4, seed in any::<u64>()) {
        let limit = diagonal_distance_with(&g, Exec::Sequential).unwrap().value;
        prop_assume!(d <= limit && d <= g.order());
        for mode in [CliqueMode::Exact, CliqueMode::Greedy { restarts: 3, seed }] {
            let r = search_code(&g, d, mode).unwrap();
            prop_assert!(r.verified_d.at_least() >= d);
        }
    }
}
