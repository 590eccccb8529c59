use covgame::generate::{random_cnf, random_digraph, random_qbf, random_undirected};
use covgame::oracle::Oracle;
use covgame::reductions::{hampath_to_bounded, qbf_to_game, sat_to_graph, vc_to_game, UndirectedGraph};
use covgame::Solver;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn sat_gadget_value_tracks_maxsat(seed in any::<u64>()) {
        let phi = random_cnf(&mut ChaCha8Rng::seed_from_u64(seed), 5, 8, 3);
        let gadget = sat_to_graph(&phi).unwrap();
        let value = Solver::default().coverage_value_graph(&gadget.model).unwrap().value.unwrap();
        let best = Oracle::default().maxsat_brute(&phi).unwrap();
        prop_assert_eq!(value, best + 1);
        let satisfiable = best == phi.num_clauses();
        prop_assert_eq!(value >= gadget.target.unwrap(), satisfiable);
    }

    #[test]
    fn qbf_gadget_decides_truth(seed in any::<u64>()) {
        let phi = random_qbf(&mut ChaCha8Rng::seed_from_u64(seed), 4, 6, 3);
        let gadget = qbf_to_game(&phi).unwrap();
        let solver = Solver::default();
        prop_assert!(solver.is_controllably_recurrent_game(&gadget.model).is_ok());
        let decision = solver
            .max_coverage_game(&gadget.model, gadget.target.unwrap())
            .unwrap()
            .decision;
        prop_assert_eq!(decision, Oracle::default().qbf_eval_brute(&phi).unwrap());
    }

    #[test]
    fn hampath_gadget_matches_search(seed in any::<u64>(), density in 0.1f64..0.7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 7) as usize;
        let h = random_digraph(&mut rng, n, density);
        let gadget = hampath_to_bounded(&h, 0).unwrap();
        let decision = Solver::default()
            .bounded_coverage_graph(&gadget.model, gadget.target.unwrap(), gadget.steps.unwrap())
            .unwrap()
            .decision;
        prop_assert_eq!(decision, Oracle::default().hampath_brute(&h, 0).unwrap());
    }

    #[test]
    fn vc_gadget_value_is_cover_plus_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_undirected(&mut rng, 1 + (seed % 6) as usize, 0.5);
        prop_assume!(!h.edges().is_empty());
        let gadget = vc_to_game(&h).unwrap();
        let solver = Solver::default();
        prop_assert!(solver.is_controllably_recurrent_game(&gadget.model).unwrap().recurrent);
        let value = solver.coverage_value_game(&gadget.model).unwrap().value.unwrap();
        prop_assert_eq!(value, Oracle::default().min_vertex_cover_brute(&h).unwrap() + 1);
    }
}

#[test]
fn vc_gadget_on_named_families() {
    let solver = Solver::default();
    let value = |h: &UndirectedGraph| {
        let game = vc_to_game(h).unwrap().model;
        solver.coverage_value_game(&game).unwrap().value.unwrap()
    };
    assert_eq!(value(&UndirectedGraph::complete(3)), 3);
    assert_eq!(value(&UndirectedGraph::complete(4)), 4);
    for leaves in 1..=5 {
        assert_eq!(value(&UndirectedGraph::star(leaves)), 2);
    }
}

proptest! {
    #[test]
    fn dimacs_round_trip(seed in any::<u64>()) {
        use covgame::reductions::{parse_dimacs, parse_qdimacs, render_dimacs, render_qdimacs};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_cnf(&mut rng, 5, 8, 3);
        prop_assert_eq!(parse_dimacs(&render_dimacs(&phi)).unwrap(), phi);
        let qbf = random_qbf(&mut rng, 4, 6, 3);
        prop_assert_eq!(parse_qdimacs(&render_qdimacs(&qbf)).unwrap(), qbf);
    }
}
