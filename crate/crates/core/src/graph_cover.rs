//! Maximal and bounded-time coverage on labeled graphs.
//!
//! Both problems are answered by breadth-first search over product states
//! `(vertex, covered)`, where `covered` is the set of propositions seen so far.
//! Successors are expanded in ascending vertex id, so the returned witness is
//! the first one found at the shallowest depth. A shortest witness never
//! revisits a product state, which bounds its length by `m * |V|`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::model::{LabeledGraph, Path, PropSet, Validate};
use crate::Solver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCoverageAnswer {
    pub decision: bool,
    /// Coverage value, when the query asked for it.
    pub value: Option<usize>,
    pub witness: Option<Path>,
    pub steps_used: Option<usize>,
}

impl GraphCoverageAnswer {
    fn no() -> Self {
        GraphCoverageAnswer {
            decision: false,
            value: None,
            witness: None,
            steps_used: None,
        }
    }

    fn yes(witness: Path, value: Option<usize>) -> Self {
        GraphCoverageAnswer {
            decision: true,
            value,
            steps_used: Some(witness.steps()),
            witness: Some(witness),
        }
    }
}

/// Verdict of a controllable-recurrence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Recurrence {
    pub recurrent: bool,
    /// Smallest reachable vertex from which the initial vertex cannot be
    /// (forced to be) reached again.
    pub counterexample: Option<usize>,
}

/// Breadth-first product search tree.
struct ProductBfs<'g> {
    g: &'g LabeledGraph,
    states: Vec<(usize, PropSet)>,
    parent: Vec<usize>,
    depth: Vec<usize>,
    index: HashMap<(usize, PropSet), usize>,
    head: usize,
}

impl<'g> ProductBfs<'g> {
    fn new(g: &'g LabeledGraph) -> Self {
        let root = (g.initial(), g.label(g.initial()));
        ProductBfs {
            g,
            states: vec![root],
            parent: vec![usize::MAX],
            depth: vec![0],
            index: HashMap::from([(root, 0)]),
            head: 0,
        }
    }

    /// Expands the next queued state within `depth_cap`, returning the ids of
    /// newly discovered states. `None` once the queue is exhausted.
    fn expand_next(&mut self, depth_cap: usize) -> Option<Vec<usize>> {
        let id = self.head;
        if id >= self.states.len() {
            return None;
        }
        self.head += 1;
        let mut fresh = Vec::new();
        if self.depth[id] >= depth_cap {
            return Some(fresh);
        }
        let (v, covered) = self.states[id];
        for &w in self.g.successors(v) {
            let next = (w, covered.union(self.g.label(w)));
            if !self.index.contains_key(&next) {
                let nid = self.states.len();
                self.index.insert(next, nid);
                self.states.push(next);
                self.parent.push(id);
                self.depth.push(self.depth[id] + 1);
                fresh.push(nid);
            }
        }
        Some(fresh)
    }

    fn path_to(&self, mut id: usize) -> Path {
        let mut vs = Vec::with_capacity(self.depth[id] + 1);
        loop {
            vs.push(self.states[id].0);
            if id == 0 {
                break;
            }
            id = self.parent[id];
        }
        vs.reverse();
        Path::new(vs)
    }

    /// First state (in discovery order) whose coverage reaches `m`.
    fn find(&mut self, m: usize, depth_cap: usize) -> Option<Path> {
        if self.states[0].1.len() >= m {
            return Some(self.path_to(0));
        }
        while let Some(fresh) = self.expand_next(depth_cap) {
            if let Some(&hit) = fresh.iter().find(|&&s| self.states[s].1.len() >= m) {
                return Some(self.path_to(hit));
            }
        }
        None
    }
}

impl Solver {
    fn check_graph(&self, g: &LabeledGraph) -> Result<()> {
        g.validate().into_result()?;
        self.check_ap(g.num_props())
    }

    /// Decides whether some path from the initial vertex covers at least `m`
    /// propositions, returning a shortest witness.
    pub fn max_coverage_graph(&self, g: &LabeledGraph, m: usize) -> Result<GraphCoverageAnswer> {
        self.check_graph(g)?;
        self.check_m(m, g.num_props())?;
        Ok(match ProductBfs::new(g).find(m, usize::MAX) {
            Some(path) => GraphCoverageAnswer::yes(path, None),
            None => GraphCoverageAnswer::no(),
        })
    }

    /// Largest `m` for which [`Solver::max_coverage_graph`] answers yes, with
    /// the witness it would return for that `m`.
    pub fn coverage_value_graph(&self, g: &LabeledGraph) -> Result<GraphCoverageAnswer> {
        self.check_graph(g)?;
        let mut bfs = ProductBfs::new(g);
        let mut best = 0;
        while bfs.expand_next(usize::MAX).is_some() {}
        // Discovery order is breadth-first, so the first state attaining the
        // maximum is also the shallowest one.
        for (id, &(_, covered)) in bfs.states.iter().enumerate() {
            if covered.len() > bfs.states[best].1.len() {
                best = id;
            }
        }
        let value = bfs.states[best].1.len();
        Ok(GraphCoverageAnswer::yes(bfs.path_to(best), Some(value)))
    }

    /// Decides whether some prefix with at most `k` steps covers at least `m`
    /// propositions.
    pub fn bounded_coverage_graph(
        &self,
        g: &LabeledGraph,
        m: usize,
        k: usize,
    ) -> Result<GraphCoverageAnswer> {
        self.check_graph(g)?;
        self.check_m(m, g.num_props())?;
        let cap = k.min(m.saturating_mul(g.num_vertices()));
        Ok(match ProductBfs::new(g).find(m, cap) {
            Some(path) => GraphCoverageAnswer::yes(path, None),
            None => GraphCoverageAnswer::no(),
        })
    }

    /// Witness-free decision keeping only the current search frontier, for
    /// unbounded (`k = None`) or bounded queries.
    pub fn decide_coverage_graph(
        &self,
        g: &LabeledGraph,
        m: usize,
        k: Option<usize>,
    ) -> Result<bool> {
        self.check_graph(g)?;
        self.check_m(m, g.num_props())?;
        let cap = m.saturating_mul(g.num_vertices());
        let cap = k.map_or(cap, |k| k.min(cap));
        let mut frontier: HashSet<(usize, PropSet)> =
            HashSet::from([(g.initial(), g.label(g.initial()))]);
        for depth in 0..=cap {
            if frontier.iter().any(|&(_, b)| b.len() >= m) {
                return Ok(true);
            }
            if depth == cap {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|&(v, b)| {
                    g.successors(v)
                        .iter()
                        .map(move |&w| (w, b.union(g.label(w))))
                })
                .collect();
        }
        Ok(false)
    }

    /// Every vertex reachable from the initial vertex can reach it back.
    pub fn is_controllably_recurrent_graph(&self, g: &LabeledGraph) -> Result<Recurrence> {
        g.validate().into_result()?;
        let forward = g.reachable_from(g.initial());
        let backward = g.reaching(g.initial());
        let counterexample = (0..g.num_vertices()).find(|&v| forward[v] && !backward[v]);
        Ok(Recurrence {
            recurrent: counterexample.is_none(),
            counterexample,
        })
    }

    /// Coverage value of a controllably recurrent graph: the label union of
    /// the strongly connected component of the initial vertex. Linear time.
    pub fn max_coverage_recurrent_graph(&self, g: &LabeledGraph) -> Result<usize> {
        g.validate().into_result()?;
        let forward = g.reachable_from(g.initial());
        let backward = g.reaching(g.initial());
        if let Some(v) = (0..g.num_vertices()).find(|&v| forward[v] && !backward[v]) {
            return Err(Error::NotRecurrent { counterexample: v });
        }
        let component = (0..g.num_vertices()).filter(|&v| forward[v] && backward[v]);
        Ok(g.label_union(component).len())
    }
}
