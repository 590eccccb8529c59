//! Seeded random instance generators for test corpora and the `generate`
//! subcommand.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{LabeledGameGraph, LabeledGraph, Player, PropId, PropSet, SystemAutomaton};
use crate::reductions::{CnfFormula, Digraph, QbfFormula, Quantifier, UndirectedGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_props: usize,
    pub max_out_degree: usize,
    /// Probability that a vertex carries a given proposition.
    pub label_density: f64,
    /// Probability that a game vertex belongs to player 2.
    pub player2_ratio: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            min_vertices: 1,
            max_vertices: 6,
            max_props: 3,
            max_out_degree: 3,
            label_density: 0.3,
            player2_ratio: 0.5,
        }
    }
}

fn random_labels<R: Rng>(rng: &mut R, props: usize, density: f64) -> PropSet {
    (0..props)
        .filter(|_| rng.random_bool(density))
        .map(PropId)
        .collect()
}

/// Total labeled graph with a random number of vertices and propositions.
pub fn random_graph<R: Rng>(rng: &mut R, spec: &RandomSpec) -> LabeledGraph {
    let n = rng.random_range(spec.min_vertices.max(1)..=spec.max_vertices.max(1));
    let props = rng.random_range(0..=spec.max_props);
    let mut g = LabeledGraph::new();
    for p in 0..props {
        g.add_prop(&format!("p{p}"));
    }
    for v in 0..n {
        let labels = random_labels(rng, props, spec.label_density);
        g.add_vertex(&format!("v{v}"), labels);
    }
    for v in 0..n {
        let degree = rng.random_range(1..=spec.max_out_degree.max(1));
        for _ in 0..degree {
            g.add_edge(v, rng.random_range(0..n));
        }
    }
    g.set_initial(rng.random_range(0..n));
    g
}

pub fn random_game<R: Rng>(rng: &mut R, spec: &RandomSpec) -> LabeledGameGraph {
    let graph = random_graph(rng, spec);
    let owners = (0..graph.num_vertices())
        .map(|_| {
            Some(if rng.random_bool(spec.player2_ratio) {
                Player::Two
            } else {
                Player::One
            })
        })
        .collect();
    LabeledGameGraph::from_parts(graph, owners)
}

/// Random game in which every player 1 vertex gets an extra edge back to the
/// initial vertex with probability `return_prob`.
pub fn random_game_with_returns<R: Rng>(
    rng: &mut R,
    spec: &RandomSpec,
    return_prob: f64,
) -> LabeledGameGraph {
    let mut game = random_game(rng, spec);
    let init = game.initial();
    for v in 0..game.num_vertices() {
        if game.owner(v) == Player::One && rng.random_bool(return_prob) {
            game.add_edge(v, init);
        }
    }
    game
}

/// Strongly connected graph on exactly `n` vertices: a random Hamiltonian
/// cycle plus `extra_edges` random chords.
pub fn random_strongly_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    props: usize,
    extra_edges: usize,
    density: f64,
) -> LabeledGraph {
    assert!(n > 0);
    let mut g = LabeledGraph::new();
    for p in 0..props {
        g.add_prop(&format!("p{p}"));
    }
    for v in 0..n {
        let labels = random_labels(rng, props, density);
        g.add_vertex(&format!("v{v}"), labels);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]);
    }
    for _ in 0..extra_edges {
        g.add_edge(rng.random_range(0..n), rng.random_range(0..n));
    }
    g.set_initial(rng.random_range(0..n));
    g
}

/// Total, possibly nondeterministic system.
pub fn random_system<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_letters: usize,
    max_props: usize,
) -> SystemAutomaton {
    let nq = rng.random_range(1..=max_states.max(1));
    let ns = rng.random_range(1..=max_letters.max(1));
    let props = rng.random_range(0..=max_props);
    let mut sys = SystemAutomaton::new();
    for p in 0..props {
        sys.add_prop(&format!("p{p}"));
    }
    for a in 0..ns {
        sys.add_letter(&format!("a{a}"));
    }
    for q in 0..nq {
        let labels = random_labels(rng, props, 0.4);
        sys.add_state(&format!("q{q}"), labels);
    }
    for q in 0..nq {
        for a in 0..ns {
            let fanout = if rng.random_bool(0.3) { 2 } else { 1 };
            for _ in 0..fanout {
                sys.add_transition(q, a, rng.random_range(0..nq));
            }
        }
    }
    sys.set_initial(rng.random_range(0..nq));
    sys
}

/// Deterministic system: exactly one successor per state and letter.
pub fn random_deterministic_system<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_letters: usize,
    max_props: usize,
) -> SystemAutomaton {
    let nq = rng.random_range(1..=max_states.max(1));
    let ns = rng.random_range(1..=max_letters.max(1));
    let props = rng.random_range(0..=max_props);
    let mut sys = SystemAutomaton::new();
    for p in 0..props {
        sys.add_prop(&format!("p{p}"));
    }
    for a in 0..ns {
        sys.add_letter(&format!("a{a}"));
    }
    for q in 0..nq {
        let labels = random_labels(rng, props, 0.4);
        sys.add_state(&format!("q{q}"), labels);
    }
    for q in 0..nq {
        for a in 0..ns {
            sys.add_transition(q, a, rng.random_range(0..nq));
        }
    }
    sys.set_initial(rng.random_range(0..nq));
    sys
}

fn random_clause<R: Rng>(rng: &mut R, vars: usize, max_len: usize) -> Vec<i32> {
    let len = rng.random_range(1..=max_len.max(1));
    (0..len)
        .map(|_| {
            let v = rng.random_range(1..=vars) as i32;
            if rng.random_bool(0.5) {
                v
            } else {
                -v
            }
        })
        .collect()
}

pub fn random_cnf<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_clauses: usize,
    max_len: usize,
) -> CnfFormula {
    let vars = rng.random_range(1..=max_vars.max(1));
    let clauses = rng.random_range(1..=max_clauses.max(1));
    let clauses = (0..clauses)
        .map(|_| random_clause(rng, vars, max_len))
        .collect();
    CnfFormula::new(vars, clauses).expect("generated clauses are in range")
}

/// QBF whose prefix quantifies all variables in a random order.
pub fn random_qbf<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_clauses: usize,
    max_len: usize,
) -> QbfFormula {
    let matrix = random_cnf(rng, max_vars, max_clauses, max_len);
    let mut vars: Vec<usize> = (1..=matrix.num_vars()).collect();
    vars.shuffle(rng);
    let prefix = vars
        .into_iter()
        .map(|v| {
            let q = if rng.random_bool(0.5) {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            (q, v)
        })
        .collect();
    QbfFormula::new(prefix, matrix).expect("prefix binds every variable once")
}

pub fn random_undirected<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> UndirectedGraph {
    let mut h = UndirectedGraph::new();
    for v in 0..n {
        h.add_vertex(&format!("u{v}"));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(edge_prob) {
                h.add_edge(a, b);
            }
        }
    }
    h
}

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Digraph {
    let mut h = Digraph::new();
    for v in 0..n {
        h.add_vertex(&format!("u{v}"));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(edge_prob) {
                h.add_edge(a, b);
            }
        }
    }
    h
}
