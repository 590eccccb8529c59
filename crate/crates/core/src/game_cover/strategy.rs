use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::product::ProductGame;
use crate::model::{LabeledGameGraph, Player, PropSet};

/// Move of a [`TesterStrategy`] at one memory state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyMove {
    pub choose: usize,
    /// Steps within which the target is guaranteed from this state.
    pub budget: usize,
}

/// Finite-memory tester strategy: at player 1 vertex `v`, having covered `b`,
/// move to `moves[(v, b)].choose`. Memoryless on the product game.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TesterStrategy {
    pub target: usize,
    /// Steps within which every consistent play reaches the target.
    pub guaranteed_steps: usize,
    moves: BTreeMap<(usize, PropSet), StrategyMove>,
}

impl TesterStrategy {
    pub fn new(target: usize, guaranteed_steps: usize) -> Self {
        TesterStrategy {
            target,
            guaranteed_steps,
            moves: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, vertex: usize, covered: PropSet, mv: StrategyMove) {
        self.moves.insert((vertex, covered), mv);
    }

    pub fn choose(&self, vertex: usize, covered: PropSet) -> Option<usize> {
        self.moves.get(&(vertex, covered)).map(|m| m.choose)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves ordered by vertex id, then by covered set.
    pub fn iter(&self) -> impl Iterator<Item = (usize, PropSet, StrategyMove)> + '_ {
        self.moves.iter().map(|(&(v, b), &m)| (v, b, m))
    }
}

/// Attractor strategy restricted to the states it can actually visit: at each
/// player 1 state pick the lowest-id successor of strictly smaller rank.
pub(crate) fn extract(product: &ProductGame, rank: &[Option<usize>], target: usize) -> TesterStrategy {
    let root_rank = rank[0].expect("strategy extraction needs a winning initial state");
    let mut strategy = TesterStrategy::new(target, root_rank);
    let mut seen = vec![false; product.num_states()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(s) = stack.pop() {
        if product.covered(s).len() >= target {
            continue;
        }
        let r = rank[s].expect("visited states stay in the attractor");
        let next: Vec<usize> = match product.owner(s) {
            Player::One => {
                let &t = product
                    .successors(s)
                    .iter()
                    .find(|&&t| rank[t].is_some_and(|rt| rt < r))
                    .expect("player 1 attractor states have a rank-decreasing successor");
                let (v, b) = product.state(s);
                strategy.insert(
                    v,
                    b,
                    StrategyMove {
                        choose: product.state(t).0,
                        budget: r,
                    },
                );
                vec![t]
            }
            Player::Two => product.successors(s).to_vec(),
        };
        for t in next {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    strategy
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyFailure {
    /// Player 1 state reached by some play with no move defined.
    MissingMove { vertex: usize, covered: PropSet },
    IllegalMove { vertex: usize, choose: usize },
    /// The adversary can keep the play in a cycle below the target.
    Cycle { vertex: usize, covered: PropSet },
    /// Some play needs more steps than allowed.
    TooSlow { needed: usize, limit: usize },
}

impl fmt::Display for StrategyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyFailure::MissingMove { vertex, covered } => {
                write!(f, "no move at vertex {vertex} with covered set {covered:?}")
            }
            StrategyFailure::IllegalMove { vertex, choose } => {
                write!(f, "move {vertex} -> {choose} is not an edge")
            }
            StrategyFailure::Cycle { vertex, covered } => write!(
                f,
                "the adversary can cycle through vertex {vertex} with covered set {covered:?}"
            ),
            StrategyFailure::TooSlow { needed, limit } => {
                write!(f, "some play needs {needed} steps, limit is {limit}")
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Mark {
    OnStack,
    Done(usize),
}

/// Checks that every play consistent with `strategy` covers `target`
/// propositions, within `limit` steps when given. Returns the worst-case
/// number of steps.
pub fn check_strategy(
    g: &LabeledGameGraph,
    strategy: &TesterStrategy,
    target: usize,
    limit: Option<usize>,
) -> Result<usize, StrategyFailure> {
    let children = |(v, b): (usize, PropSet)| -> Result<Vec<(usize, PropSet)>, StrategyFailure> {
        if b.len() >= target {
            return Ok(Vec::new());
        }
        let step = |w: usize| (w, b.union(g.label(w)));
        match g.owner(v) {
            Player::One => {
                let w = strategy
                    .choose(v, b)
                    .ok_or(StrategyFailure::MissingMove { vertex: v, covered: b })?;
                if !g.has_edge(v, w) {
                    return Err(StrategyFailure::IllegalMove { vertex: v, choose: w });
                }
                Ok(vec![step(w)])
            }
            Player::Two => Ok(g.successors(v).iter().map(|&w| step(w)).collect()),
        }
    };

    let root = (g.initial(), g.label(g.initial()));
    let mut marks: HashMap<(usize, PropSet), Mark> = HashMap::from([(root, Mark::OnStack)]);
    let mut stack = vec![(root, children(root)?, 0usize, 0usize)];
    let worst = loop {
        let (state, kids, next, depth) = stack.last_mut().expect("stack holds the root");
        if let Some(&kid) = kids.get(*next) {
            *next += 1;
            match marks.get(&kid) {
                Some(Mark::OnStack) => {
                    return Err(StrategyFailure::Cycle {
                        vertex: kid.0,
                        covered: kid.1,
                    })
                }
                Some(&Mark::Done(d)) => *depth = (*depth).max(d + 1),
                None => {
                    marks.insert(kid, Mark::OnStack);
                    let grandkids = children(kid)?;
                    stack.push((kid, grandkids, 0, 0));
                }
            }
            continue;
        }
        let (state, depth) = (*state, *depth);
        marks.insert(state, Mark::Done(depth));
        stack.pop();
        match stack.last_mut() {
            Some(parent) => parent.3 = parent.3.max(depth + 1),
            None => break depth,
        }
    };
    match limit {
        Some(limit) if worst > limit => Err(StrategyFailure::TooSlow {
            needed: worst,
            limit,
        }),
        _ => Ok(worst),
    }
}
