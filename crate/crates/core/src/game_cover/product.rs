use std::collections::{HashMap, VecDeque};

use crate::model::{LabeledGameGraph, Player, PropSet};

/// The game on states `(vertex, covered)`: moving along `v -> w` adds the
/// labels of `w` to `covered`. Only states reachable from
/// `(initial, L(initial))` are materialized; the initial state has id 0.
#[derive(Debug, Clone)]
pub struct ProductGame<'g> {
    game: &'g LabeledGameGraph,
    states: Vec<(usize, PropSet)>,
    index: HashMap<(usize, PropSet), usize>,
    succ: Vec<Vec<usize>>,
}

impl<'g> ProductGame<'g> {
    pub fn explore(game: &'g LabeledGameGraph) -> Self {
        let root = (game.initial(), game.label(game.initial()));
        let mut product = ProductGame {
            game,
            states: vec![root],
            index: HashMap::from([(root, 0)]),
            succ: Vec::new(),
        };
        let mut queue = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let (v, covered) = product.states[id];
            let mut succ = Vec::with_capacity(game.successors(v).len());
            for &w in game.successors(v) {
                let next = (w, covered.union(game.label(w)));
                let nid = *product.index.entry(next).or_insert_with(|| {
                    product.states.push(next);
                    queue.push_back(product.states.len() - 1);
                    product.states.len() - 1
                });
                succ.push(nid);
            }
            if product.succ.len() <= id {
                product.succ.resize(id + 1, Vec::new());
            }
            product.succ[id] = succ;
        }
        product
    }

    pub fn game(&self) -> &'g LabeledGameGraph {
        self.game
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, id: usize) -> (usize, PropSet) {
        self.states[id]
    }

    pub fn covered(&self, id: usize) -> PropSet {
        self.states[id].1
    }

    pub fn id_of(&self, vertex: usize, covered: PropSet) -> Option<usize> {
        self.index.get(&(vertex, covered)).copied()
    }

    /// Successor ids, in ascending order of their vertex.
    pub fn successors(&self, id: usize) -> &[usize] {
        &self.succ[id]
    }

    pub fn owner(&self, id: usize) -> Player {
        self.game.owner(self.states[id].0)
    }

    pub(crate) fn successor_lists(&self) -> &[Vec<usize>] {
        &self.succ
    }
}
