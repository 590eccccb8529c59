//! Exhaustive reference implementations. Nothing here calls into the
//! solvers; these exist to check them.
//!
//! Every search counts node expansions against a budget and fails with
//! [`Error::BudgetExceeded`] instead of returning a guess.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{LabeledGameGraph, LabeledGraph, Player, PropSet};
use crate::reductions::{CnfFormula, Digraph, QbfFormula, Quantifier, UndirectedGraph};

pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

struct Frame {
    vertex: usize,
    covered: PropSet,
    left: usize,
    all: bool,
    children: Vec<usize>,
    next: usize,
}

/// And-or evaluation of the unfolding tree from the initial vertex: a node
/// holds once `m` propositions are covered, fails at depth `depth` otherwise,
/// needs every child at `all` nodes and one child elsewhere.
fn unfold(
    g: &LabeledGraph,
    m: usize,
    depth: usize,
    counter: &mut Counter,
    all: impl Fn(usize) -> bool,
    children: impl Fn(usize, PropSet) -> Result<Vec<usize>>,
) -> Result<bool> {
    // Subtrees are identified by (vertex, covered, depth left), so results
    // are shared between identical subtrees.
    let memo: RefCell<HashMap<(usize, PropSet, usize), bool>> = RefCell::default();
    let open = |v: usize, covered: PropSet, left: usize| -> Result<std::result::Result<Frame, bool>> {
        if covered.len() >= m {
            return Ok(Err(true));
        }
        if left == 0 {
            return Ok(Err(false));
        }
        if let Some(&answer) = memo.borrow().get(&(v, covered, left)) {
            return Ok(Err(answer));
        }
        Ok(Ok(Frame {
            vertex: v,
            covered,
            left,
            all: all(v),
            children: children(v, covered)?,
            next: 0,
        }))
    };
    let root = g.initial();
    let mut stack = match open(root, g.label(root), depth)? {
        Ok(frame) => vec![frame],
        Err(answer) => return Ok(answer),
    };
    let mut returned: Option<bool> = None;
    loop {
        let top = stack.last_mut().expect("loop exits when the stack empties");
        let mut done = None;
        if let Some(r) = returned.take() {
            if r != top.all {
                // a true child settles an "any" node, a false one an "all" node
                done = Some(r);
            }
        }
        if done.is_none() {
            if let Some(&w) = top.children.get(top.next) {
                top.next += 1;
                counter.tick()?;
                let covered = top.covered.union(g.label(w));
                let left = top.left - 1;
                match open(w, covered, left)? {
                    Ok(frame) => stack.push(frame),
                    Err(answer) => returned = Some(answer),
                }
                continue;
            }
            done = Some(top.all);
        }
        let finished = stack.pop().expect("nonempty");
        memo.borrow_mut()
            .insert((finished.vertex, finished.covered, finished.left), done.expect("set above"));
        if stack.is_empty() {
            return Ok(done.expect("set above"));
        }
        returned = done;
    }
}

impl Oracle {
    pub fn new(budget: u64) -> Self {
        Oracle { budget }
    }

    fn counter(&self) -> Counter {
        Counter {
            used: 0,
            limit: self.budget,
        }
    }

    /// Some path of at most `min(k, m * |V|)` steps covers `m` propositions.
    /// `k = None` asks the unbounded question.
    pub fn brute_force_graph(&self, g: &LabeledGraph, m: usize, k: Option<usize>) -> Result<bool> {
        let cap = m.saturating_mul(g.num_vertices());
        let depth = k.map_or(cap, |k| k.min(cap));
        unfold(g, m, depth, &mut self.counter(), |_| false, |v, _| {
            Ok(g.successors(v).to_vec())
        })
    }

    /// Minimax over the exploration tree of depth `k` with leaves worth the
    /// number of covered propositions; `k = None` uses depth `|V| * (|AP| + 1)`.
    pub fn brute_force_game(&self, g: &LabeledGameGraph, m: usize, k: Option<usize>) -> Result<bool> {
        let depth = k.unwrap_or(g.num_vertices() * (g.num_props() + 1));
        unfold(
            g.graph(),
            m,
            depth,
            &mut self.counter(),
            |v| g.owner(v) == Player::Two,
            |v, _| Ok(g.successors(v).to_vec()),
        )
    }

    /// Every play in which player 1 follows `choose(vertex, covered)` covers
    /// `m` propositions within `depth` steps. A missing or illegal move fails.
    pub fn strategy_playout(
        &self,
        g: &LabeledGameGraph,
        m: usize,
        depth: usize,
        choose: impl Fn(usize, PropSet) -> Option<usize>,
    ) -> Result<bool> {
        let illegal = std::cell::Cell::new(false);
        let answer = unfold(
            g.graph(),
            m,
            depth,
            &mut self.counter(),
            |_| true,
            |v, covered| {
                Ok(match g.owner(v) {
                    Player::Two => g.successors(v).to_vec(),
                    Player::One => match choose(v, covered) {
                        Some(w) if g.successors(v).contains(&w) => vec![w],
                        _ => {
                            illegal.set(true);
                            Vec::new()
                        }
                    },
                })
            },
        )?;
        Ok(answer && !illegal.get())
    }

    /// Largest number of clauses satisfied by one assignment.
    pub fn maxsat_brute(&self, phi: &CnfFormula) -> Result<usize> {
        let n = phi.num_vars();
        if n >= 40 {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        let mut counter = self.counter();
        let mut best = 0;
        let mut assignment = vec![false; n];
        for bits in 0u64..(1u64 << n) {
            counter.tick()?;
            for (v, slot) in assignment.iter_mut().enumerate() {
                *slot = bits & (1 << v) != 0;
            }
            best = best.max(phi.satisfied_by(&assignment));
        }
        Ok(best)
    }

    /// Truth of a QBF by recursive expansion of its prefix.
    pub fn qbf_eval_brute(&self, phi: &QbfFormula) -> Result<bool> {
        fn eval(
            phi: &QbfFormula,
            level: usize,
            assignment: &mut Vec<bool>,
            counter: &mut Counter,
        ) -> Result<bool> {
            counter.tick()?;
            let Some(&(q, v)) = phi.prefix().get(level) else {
                return Ok(phi.matrix().satisfied_by(assignment) == phi.matrix().num_clauses());
            };
            let mut results = [false; 2];
            for (i, value) in [false, true].into_iter().enumerate() {
                assignment[v - 1] = value;
                results[i] = eval(phi, level + 1, assignment, counter)?;
            }
            Ok(match q {
                Quantifier::Exists => results[0] || results[1],
                Quantifier::Forall => results[0] && results[1],
            })
        }
        let mut assignment = vec![false; phi.matrix().num_vars()];
        eval(phi, 0, &mut assignment, &mut self.counter())
    }

    /// Size of a smallest vertex cover, trying subsets in ascending size.
    pub fn min_vertex_cover_brute(&self, h: &UndirectedGraph) -> Result<usize> {
        let n = h.num_vertices();
        if n >= 40 {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        let mut counter = self.counter();
        for size in 0..=n {
            for set in (0u64..(1u64 << n)).filter(|s| s.count_ones() as usize == size) {
                counter.tick()?;
                let covers = h
                    .edges()
                    .iter()
                    .all(|&(a, b)| set & (1 << a) != 0 || set & (1 << b) != 0);
                if covers {
                    return Ok(size);
                }
            }
        }
        unreachable!("the full vertex set is a cover")
    }

    /// Some simple path from `start` visits every vertex.
    pub fn hampath_brute(&self, h: &Digraph, start: usize) -> Result<bool> {
        fn extend(
            h: &Digraph,
            v: usize,
            visited: &mut Vec<bool>,
            count: usize,
            counter: &mut Counter,
        ) -> Result<bool> {
            counter.tick()?;
            if count == h.num_vertices() {
                return Ok(true);
            }
            for &w in h.successors(v) {
                if !visited[w] {
                    visited[w] = true;
                    let found = extend(h, w, visited, count + 1, counter)?;
                    visited[w] = false;
                    if found {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        let mut visited = vec![false; h.num_vertices()];
        visited[start] = true;
        extend(h, start, &mut visited, 1, &mut self.counter())
    }
}
