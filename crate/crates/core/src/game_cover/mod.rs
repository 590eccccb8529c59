//! Coverage on labeled game graphs.
//!
//! Maximal coverage is a reachability game on the product of the game with
//! the powerset of propositions, solved by an attractor computation; the
//! attractor ranks yield a finite-memory tester strategy. Bounded coverage is
//! the minimax value of the depth-limited exploration tree. On controllably
//! recurrent games a negative answer is certified by an end component whose
//! labels stay below the target.

mod attractor;
mod bounded;
mod end_component;
mod product;
mod strategy;

pub use end_component::EndComponent;
pub use product::ProductGame;
pub use strategy::{check_strategy, StrategyFailure, StrategyMove, TesterStrategy};

use crate::error::{Error, Result};
use crate::graph_cover::Recurrence;
use crate::model::{LabeledGameGraph, Player, PropSet, Validate};
use crate::Solver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameAnswer {
    pub decision: bool,
    /// Value of the query (coverage value, or bounded minimax value).
    pub value: Option<usize>,
    /// Winning tester strategy on a yes answer.
    pub strategy: Option<TesterStrategy>,
}

/// Result of [`Solver::min_safety_value`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyAnswer {
    pub value: usize,
    /// Propositions the confinement region is restricted to.
    pub props: PropSet,
    /// Vertices from which player 2 keeps the play inside the region.
    pub region: Vec<usize>,
}

fn goal_attractor(product: &ProductGame, m: usize) -> Vec<Option<usize>> {
    attractor::attractor(
        product.successor_lists(),
        |s| product.owner(s),
        Player::One,
        |s| product.covered(s).len() >= m,
    )
}

impl Solver {
    fn check_game(&self, g: &LabeledGameGraph) -> Result<()> {
        g.validate().into_result()?;
        self.check_ap(g.num_props())
    }

    fn solve_product(&self, product: &ProductGame, m: usize) -> Option<TesterStrategy> {
        let rank = goal_attractor(product, m);
        rank[0].map(|_| strategy::extract(product, &rank, m))
    }

    /// Decides whether player 1 can force a visit to at least `m` propositions.
    pub fn max_coverage_game(&self, g: &LabeledGameGraph, m: usize) -> Result<GameAnswer> {
        self.check_game(g)?;
        self.check_m(m, g.num_props())?;
        if g.label(g.initial()).len() >= m {
            return Ok(GameAnswer {
                decision: true,
                value: None,
                strategy: Some(TesterStrategy::new(m, 0)),
            });
        }
        let product = ProductGame::explore(g);
        let strategy = self.solve_product(&product, m);
        Ok(GameAnswer {
            decision: strategy.is_some(),
            value: None,
            strategy,
        })
    }

    /// Largest `m` player 1 can guarantee, searched downward over one product.
    pub fn coverage_value_game(&self, g: &LabeledGameGraph) -> Result<GameAnswer> {
        self.check_game(g)?;
        let floor = g.label(g.initial()).len();
        let product = ProductGame::explore(g);
        let ceiling = (0..product.num_states())
            .map(|s| product.covered(s).len())
            .max()
            .unwrap_or(floor);
        for m in (floor + 1..=ceiling).rev() {
            if let Some(strategy) = self.solve_product(&product, m) {
                return Ok(GameAnswer {
                    decision: true,
                    value: Some(m),
                    strategy: Some(strategy),
                });
            }
        }
        Ok(GameAnswer {
            decision: true,
            value: Some(floor),
            strategy: Some(TesterStrategy::new(floor, 0)),
        })
    }

    /// Decides whether player 1 can force `m` propositions within `k` steps.
    ///
    /// The value is the minimax value of the exploration tree cut at depth
    /// `min(k, |V| * (|AP| + 1))`; no play needs longer to reach its coverage.
    pub fn bounded_coverage_game(
        &self,
        g: &LabeledGameGraph,
        m: usize,
        k: usize,
    ) -> Result<GameAnswer> {
        self.check_game(g)?;
        self.check_m(m, g.num_props())?;
        let depth = k.min(g.num_vertices().saturating_mul(g.num_props() + 1));
        let (value, product) = if self.low_memory {
            (bounded::value_by_tree_walk(g, depth), None)
        } else {
            let product = ProductGame::explore(g);
            (bounded::value_by_table(&product, depth), Some(product))
        };
        let decision = value >= m;
        let strategy = if !decision {
            None
        } else if g.label(g.initial()).len() >= m {
            Some(TesterStrategy::new(m, 0))
        } else {
            let product = product.unwrap_or_else(|| ProductGame::explore(g));
            let strategy = self
                .solve_product(&product, m)
                .expect("a positive bounded value implies an attractor strategy");
            debug_assert!(strategy.guaranteed_steps <= k);
            Some(strategy)
        };
        Ok(GameAnswer {
            decision,
            value: Some(value),
            strategy,
        })
    }

    /// Every vertex reachable from the initial vertex lies in the player 1
    /// attractor of the initial vertex.
    pub fn is_controllably_recurrent_game(&self, g: &LabeledGameGraph) -> Result<Recurrence> {
        g.validate().into_result()?;
        let succ: Vec<Vec<usize>> = (0..g.num_vertices())
            .map(|v| g.successors(v).to_vec())
            .collect();
        let init = g.initial();
        let rank = attractor::attractor(&succ, |v| g.owner(v), Player::One, |v| v == init);
        let reachable = g.reachable_from(init);
        let counterexample = (0..g.num_vertices()).find(|&v| reachable[v] && rank[v].is_none());
        Ok(Recurrence {
            recurrent: counterexample.is_none(),
            counterexample,
        })
    }

    /// Checks a negative-answer certificate: `vertices` is an end component
    /// containing the initial vertex whose labels number fewer than `m`.
    pub fn verify_end_component_witness(
        &self,
        g: &LabeledGameGraph,
        vertices: &[usize],
        m: usize,
    ) -> Result<bool> {
        g.validate().into_result()?;
        Ok(end_component::verify(g, vertices, m))
    }

    /// End component containing the initial vertex with the fewest
    /// propositions, searching proposition sets in ascending size.
    pub fn min_cover_end_component(&self, g: &LabeledGameGraph) -> Result<(EndComponent, usize)> {
        self.check_game(g)?;
        let reachable = g.reachable_from(g.initial());
        let within = |props: PropSet| -> Vec<bool> {
            (0..g.num_vertices())
                .map(|v| reachable[v] && g.label(v).is_subset(props))
                .collect()
        };
        let base = g.label(g.initial());
        let everything = g.label_union((0..g.num_vertices()).filter(|&v| reachable[v]));
        if end_component::maximal_within(g, &within(everything)).is_none() {
            let verdict = self.is_controllably_recurrent_game(g)?;
            return Err(match verdict.counterexample {
                Some(counterexample) => Error::NotRecurrent { counterexample },
                None => Error::NoEndComponent,
            });
        }
        let extra = PropSet::from_bits(everything.bits() & !base.bits());
        for more in extra.subsets_by_size() {
            if let Some(ec) = end_component::maximal_within(g, &within(base.union(more))) {
                let count = ec.props.len();
                return Ok((ec, count));
            }
        }
        unreachable!("the full reachable label set admits an end component")
    }

    /// Fewest propositions player 2 can confine the play to: the least `|P|`
    /// such that player 2 wins the safety game on vertices labeled within `P`.
    pub fn min_safety_value(&self, g: &LabeledGameGraph) -> Result<SafetyAnswer> {
        self.check_game(g)?;
        let init = g.initial();
        let reachable = g.reachable_from(init);
        let base = g.label(init);
        let everything = g.label_union((0..g.num_vertices()).filter(|&v| reachable[v]));
        let succ: Vec<Vec<usize>> = (0..g.num_vertices())
            .map(|v| g.successors(v).to_vec())
            .collect();
        let extra = PropSet::from_bits(everything.bits() & !base.bits());
        for more in extra.subsets_by_size() {
            let props = base.union(more);
            let escape = attractor::attractor(&succ, |v| g.owner(v), Player::One, |v| {
                !g.label(v).is_subset(props)
            });
            if escape[init].is_none() {
                let region = (0..g.num_vertices())
                    .filter(|&v| reachable[v] && escape[v].is_none())
                    .collect();
                return Ok(SafetyAnswer {
                    value: props.len(),
                    props,
                    region,
                });
            }
        }
        unreachable!("player 1 cannot leave the reachable vertices")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{compile_system, LabeledGraph, SystemAutomaton};

    fn triangle_game() -> LabeledGameGraph {
        let mut g = LabeledGraph::new();
        let a = g.add_labeled_vertex("a", &["p"]);
        let b = g.add_labeled_vertex("b", &["q"]);
        let c = g.add_labeled_vertex("c", &["r"]);
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(c, a);
        LabeledGameGraph::owned_by(g, Player::One)
    }

    /// v0 -> {a, b}, a and b absorbing.
    fn branch_game(root_owner: Player) -> LabeledGameGraph {
        let mut g = LabeledGameGraph::new();
        let v0 = g.add_labeled_vertex("v0", root_owner, &[]);
        let a = g.add_labeled_vertex("a", Player::One, &["p"]);
        let b = g.add_labeled_vertex("b", Player::One, &["q"]);
        g.add_edge(v0, a);
        g.add_edge(v0, b);
        g.add_edge(a, a);
        g.add_edge(b, b);
        g.set_initial(v0);
        g
    }

    #[test]
    fn adversarial_branch() {
        let solver = Solver::default();
        for owner in [Player::Two, Player::One] {
            let g = branch_game(owner);
            let one = solver.max_coverage_game(&g, 1).unwrap();
            assert!(one.decision);
            let strategy = one.strategy.unwrap();
            assert_eq!(check_strategy(&g, &strategy, 1, None), Ok(1));
            assert!(!solver.max_coverage_game(&g, 2).unwrap().decision);
            assert_eq!(solver.coverage_value_game(&g).unwrap().value, Some(1));
            assert!(solver.bounded_coverage_game(&g, 1, 1).unwrap().decision);
            assert!(!solver.bounded_coverage_game(&g, 1, 0).unwrap().decision);
        }
        let g = branch_game(Player::One);
        let strategy = solver.max_coverage_game(&g, 1).unwrap().strategy.unwrap();
        assert_eq!(strategy.choose(0, PropSet::EMPTY), Some(1));
    }

    #[test]
    fn zero_target_needs_no_moves() {
        let ans = Solver::default().max_coverage_game(&branch_game(Player::Two), 0).unwrap();
        assert!(ans.decision);
        assert!(ans.strategy.unwrap().is_empty());
    }

    #[test]
    fn triangle_game_matches_graph() {
        let solver = Solver::default();
        let g = triangle_game();
        assert_eq!(solver.coverage_value_game(&g).unwrap().value, Some(3));
        assert!(solver.bounded_coverage_game(&g, 3, 2).unwrap().decision);
        assert!(!solver.bounded_coverage_game(&g, 3, 1).unwrap().decision);
        let low = solver.with_low_memory(true);
        assert!(low.bounded_coverage_game(&g, 3, 2).unwrap().decision);
        assert!(!low.bounded_coverage_game(&g, 3, 1).unwrap().decision);
    }

    #[test]
    fn recurrence_of_games() {
        let solver = Solver::default();
        assert!(solver.is_controllably_recurrent_game(&triangle_game()).unwrap().recurrent);
        let verdict = solver
            .is_controllably_recurrent_game(&branch_game(Player::Two))
            .unwrap();
        assert_eq!(verdict.counterexample, Some(1));
    }

    #[test]
    fn end_component_witnesses() {
        let solver = Solver::default();
        let g = triangle_game();
        assert!(solver.verify_end_component_witness(&g, &[0, 1, 2], 4).unwrap());
        assert!(!solver.verify_end_component_witness(&g, &[0, 1, 2], 3).unwrap());
        // a's only successor b is missing
        assert!(!solver.verify_end_component_witness(&g, &[0, 2], 4).unwrap());
        // single vertex without self-loop
        assert!(!solver.verify_end_component_witness(&g, &[0], 4).unwrap());

        let (ec, count) = solver.min_cover_end_component(&g).unwrap();
        assert_eq!(ec.vertices, vec![0, 1, 2]);
        assert_eq!(count, 3);
        assert_eq!(solver.min_safety_value(&g).unwrap().value, 3);
    }

    #[test]
    fn player_two_confines_where_no_end_component_exists() {
        let solver = Solver::default();
        let g = branch_game(Player::Two);
        assert!(matches!(
            solver.min_cover_end_component(&g),
            Err(Error::NotRecurrent { counterexample: 1 })
        ));
        let safety = solver.min_safety_value(&g).unwrap();
        assert_eq!(safety.value, 1);
        assert_eq!(safety.region, vec![0, 1]);
    }

    #[test]
    fn system_game_with_choice() {
        // tester picks a or b at q; on b the system may stay or move to r (labeled p)
        let mut sys = SystemAutomaton::new();
        let a = sys.add_letter("a");
        let b = sys.add_letter("b");
        let q = sys.add_labeled_state("q", &[]);
        let r = sys.add_labeled_state("r", &["p"]);
        sys.add_transition(q, a, q);
        sys.add_transition(q, b, q);
        sys.add_transition(q, b, r);
        sys.add_transition(r, a, q);
        sys.add_transition(r, b, r);
        let game = compile_system(&sys).unwrap();
        let solver = Solver::default();
        assert_eq!(solver.coverage_value_game(&game).unwrap().value, Some(0));
        assert!(solver.is_controllably_recurrent_game(&game).unwrap().recurrent);
        let (ec, count) = solver.min_cover_end_component(&game).unwrap();
        assert_eq!(count, 0);
        assert!(solver.verify_end_component_witness(&game, &ec.vertices, 1).unwrap());
    }
}
