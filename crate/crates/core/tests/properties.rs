use covgame::game_cover::{check_strategy, ProductGame};
use covgame::generate::{
    random_deterministic_system, random_game, random_game_with_returns, random_graph,
    random_system, RandomSpec,
};
use covgame::oracle::Oracle;
use covgame::{compile_system, game_to_graph, LabeledGameGraph, Player, Solver};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn recurrent_game(seed: u64) -> LabeledGameGraph {
    let mut rng = rng(seed);
    let spec = RandomSpec {
        max_vertices: 8,
        max_props: 4,
        ..RandomSpec::default()
    };
    loop {
        let g = random_game_with_returns(&mut rng, &spec, 0.6);
        if Solver::default()
            .is_controllably_recurrent_game(&g)
            .unwrap()
            .recurrent
        {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_decisions_are_monotone_and_saturate(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), &RandomSpec::default());
        let solver = Solver::default();
        let n = g.num_vertices();
        let mut previous_m = true;
        for m in 0..=g.num_props() {
            let unbounded = solver.max_coverage_graph(&g, m).unwrap().decision;
            prop_assert!(previous_m || !unbounded);
            previous_m = unbounded;
            let mut previous_k = false;
            for k in 0..=m * n + 2 {
                let d = solver.bounded_coverage_graph(&g, m, k).unwrap().decision;
                prop_assert!(!previous_k || d);
                previous_k = d;
                if k >= m * n {
                    prop_assert_eq!(d, unbounded);
                }
            }
        }
    }

    #[test]
    fn game_decisions_are_monotone_and_saturate(seed in any::<u64>()) {
        let g = random_game(&mut rng(seed), &RandomSpec::default());
        let solver = Solver::default();
        let horizon = g.num_vertices() * (g.num_props() + 1);
        let mut previous_m = true;
        for m in 0..=g.num_props() {
            let unbounded = solver.max_coverage_game(&g, m).unwrap().decision;
            prop_assert!(previous_m || !unbounded);
            previous_m = unbounded;
            let mut previous_k = false;
            for k in 0..=horizon + 1 {
                let d = solver.bounded_coverage_game(&g, m, k).unwrap().decision;
                prop_assert!(!previous_k || d);
                previous_k = d;
                if k >= horizon {
                    prop_assert_eq!(d, unbounded);
                }
            }
        }
    }

    #[test]
    fn game_value_never_exceeds_graph_value(seed in any::<u64>()) {
        let game = random_game(&mut rng(seed), &RandomSpec::default());
        let solver = Solver::default();
        let as_graph = game.graph().clone();
        let game_value = solver.coverage_value_game(&game).unwrap().value.unwrap();
        let graph_value = solver.coverage_value_graph(&as_graph).unwrap().value.unwrap();
        prop_assert!(game_value <= graph_value);
        // a game owned entirely by player 1 is the graph
        let solo = LabeledGameGraph::owned_by(as_graph, Player::One);
        prop_assert_eq!(solver.coverage_value_game(&solo).unwrap().value.unwrap(), graph_value);
    }

    #[test]
    fn product_is_within_the_powerset_bound(seed in any::<u64>()) {
        let game = random_game(&mut rng(seed), &RandomSpec::default());
        let product = ProductGame::explore(&game);
        prop_assert!(product.num_states() <= game.num_vertices() << game.num_props());
        for s in 0..product.num_states() {
            let (v, covered) = product.state(s);
            prop_assert!(game.label(v).is_subset(covered));
            prop_assert_eq!(product.id_of(v, covered), Some(s));
        }
    }

    #[test]
    fn strategies_win_every_play(seed in any::<u64>()) {
        let game = random_game(&mut rng(seed), &RandomSpec::default());
        let solver = Solver::default();
        let oracle = Oracle::default();
        for m in 0..=game.num_props() {
            let answer = solver.max_coverage_game(&game, m).unwrap();
            if let Some(strategy) = &answer.strategy {
                let steps = check_strategy(&game, strategy, m, None).unwrap();
                prop_assert!(steps <= strategy.guaranteed_steps);
                let playout = oracle
                    .strategy_playout(&game, m, steps, |v, b| strategy.choose(v, b))
                    .unwrap();
                prop_assert!(playout);
            }
        }
    }

    #[test]
    fn end_components_bound_the_value_on_recurrent_games(seed in any::<u64>()) {
        let game = recurrent_game(seed);
        let solver = Solver::default();
        let value = solver.coverage_value_game(&game).unwrap().value.unwrap();
        let (ec, count) = solver.min_cover_end_component(&game).unwrap();
        prop_assert_eq!(count, value);
        prop_assert!(ec.vertices.contains(&game.initial()));
        prop_assert!(solver.verify_end_component_witness(&game, &ec.vertices, value + 1).unwrap());
        if value < game.num_props() {
            prop_assert!(!solver.max_coverage_game(&game, value + 1).unwrap().decision);
        }
        prop_assert_eq!(solver.min_safety_value(&game).unwrap().value, value);
    }

    #[test]
    fn safety_value_dominates_the_game_value(seed in any::<u64>()) {
        let game = random_game(&mut rng(seed), &RandomSpec::default());
        let solver = Solver::default();
        let value = solver.coverage_value_game(&game).unwrap().value.unwrap();
        prop_assert!(solver.min_safety_value(&game).unwrap().value >= value);
    }

    #[test]
    fn deterministic_systems_keep_their_value(seed in any::<u64>()) {
        let sys = random_deterministic_system(&mut rng(seed), 4, 2, 3);
        let solver = Solver::default();
        let game = compile_system(&sys).unwrap();
        let graph = game_to_graph(&game).unwrap();
        prop_assert_eq!(
            solver.coverage_value_game(&game).unwrap().value,
            solver.coverage_value_graph(&graph).unwrap().value
        );
    }

    #[test]
    fn compiled_games_alternate(seed in any::<u64>()) {
        let sys = random_system(&mut rng(seed), 4, 2, 3);
        let game = compile_system(&sys).unwrap();
        for v in 0..game.num_vertices() {
            for &w in game.successors(v) {
                prop_assert_ne!(game.owner(v), game.owner(w));
            }
        }
        for a in 0..sys.num_letters() {
            for q in 0..sys.num_states() {
                let pair = sys.num_states() + q * sys.num_letters() + a;
                prop_assert_eq!(game.label(pair), sys.label(q));
            }
        }
    }
}
