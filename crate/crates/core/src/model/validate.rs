use std::fmt;

use super::graph::{LabeledGameGraph, LabeledGraph};
use super::props::{PropSet, MAX_PROPS};
use super::system::SystemAutomaton;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyModel,
    BadInitial(usize),
    /// Vertex without outgoing edges.
    NonTotal(usize),
    DanglingEdge { from: usize, to: usize },
    /// Vertex labeled with a proposition outside the universe.
    UnknownProp(usize),
    MissingOwner(usize),
    TooManyProps(usize),
    EmptyAlphabet,
    /// State and letter with no successor.
    NonTotalTransition { state: usize, letter: usize },
    DanglingTransition { state: usize, letter: usize, to: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyModel => write!(f, "model has no vertices"),
            Violation::BadInitial(v) => write!(f, "initial vertex {v} does not exist"),
            Violation::NonTotal(v) => write!(f, "vertex {v} has no outgoing edge"),
            Violation::DanglingEdge { from, to } => {
                write!(f, "edge {from} -> {to} points to a missing vertex")
            }
            Violation::UnknownProp(v) => write!(f, "vertex {v} carries an undeclared proposition"),
            Violation::MissingOwner(v) => write!(f, "vertex {v} has no owner"),
            Violation::TooManyProps(n) => {
                write!(f, "{n} propositions exceed the supported maximum of {MAX_PROPS}")
            }
            Violation::EmptyAlphabet => write!(f, "system has an empty input alphabet"),
            Violation::NonTotalTransition { state, letter } => {
                write!(f, "state {state} has no successor on letter {letter}")
            }
            Violation::DanglingTransition { state, letter, to } => {
                write!(f, "transition ({state}, {letter}) -> {to} points to a missing state")
            }
        }
    }
}

/// Violations of the standing model invariants; empty iff the model is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, v: &Violation) -> bool {
        self.violations.contains(v)
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub trait Validate {
    fn validate(&self) -> ValidationReport;
}

impl Validate for LabeledGraph {
    fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.num_vertices();
        if n == 0 {
            violations.push(Violation::EmptyModel);
        }
        if self.num_props() > MAX_PROPS {
            violations.push(Violation::TooManyProps(self.num_props()));
        }
        if self.initial() >= n && n > 0 {
            violations.push(Violation::BadInitial(self.initial()));
        }
        let universe = PropSet::full(self.num_props().min(MAX_PROPS));
        for v in 0..n {
            let succ = self.successors(v);
            if succ.is_empty() {
                violations.push(Violation::NonTotal(v));
            }
            for &to in succ.iter().filter(|&&to| to >= n) {
                violations.push(Violation::DanglingEdge { from: v, to });
            }
            if !self.label(v).is_subset(universe) {
                violations.push(Violation::UnknownProp(v));
            }
        }
        ValidationReport { violations }
    }
}

impl Validate for LabeledGameGraph {
    fn validate(&self) -> ValidationReport {
        let mut report = self.graph().validate();
        report.violations.extend(
            (0..self.num_vertices())
                .filter(|&v| self.owner_opt(v).is_none())
                .map(Violation::MissingOwner),
        );
        report
    }
}

impl Validate for SystemAutomaton {
    fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let (nq, ns) = (self.num_states(), self.num_letters());
        if nq == 0 {
            violations.push(Violation::EmptyModel);
        } else if self.initial() >= nq {
            violations.push(Violation::BadInitial(self.initial()));
        }
        if ns == 0 {
            violations.push(Violation::EmptyAlphabet);
        }
        if self.num_props() > MAX_PROPS {
            violations.push(Violation::TooManyProps(self.num_props()));
        }
        let universe = PropSet::full(self.num_props().min(MAX_PROPS));
        for q in 0..nq {
            for a in 0..ns {
                let succ = self.successors(q, a);
                if succ.is_empty() {
                    violations.push(Violation::NonTotalTransition { state: q, letter: a });
                }
                for &to in succ.iter().filter(|&&to| to >= nq) {
                    violations.push(Violation::DanglingTransition { state: q, letter: a, to });
                }
            }
            if !self.label(q).is_subset(universe) {
                violations.push(Violation::UnknownProp(q));
            }
        }
        ValidationReport { violations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LabeledGameGraph, Player};

    #[test]
    fn triangle_is_valid() {
        let mut g = LabeledGraph::new();
        for name in ["a", "b", "c"] {
            g.add_labeled_vertex(name, &[]);
        }
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn sink_is_reported() {
        let mut g = LabeledGraph::new();
        let a = g.add_labeled_vertex("a", &[]);
        let s = g.add_labeled_vertex("s", &[]);
        g.add_edge(a, s);
        let report = g.validate();
        assert_eq!(report.violations, vec![Violation::NonTotal(s)]);
        assert!(report.into_result().is_err());
    }

    #[test]
    fn missing_owner_is_reported() {
        let mut g = LabeledGraph::new();
        for name in ["a", "b", "c"] {
            let v = g.add_labeled_vertex(name, &[]);
            g.add_edge(v, v);
        }
        let game = LabeledGameGraph::from_parts(g, vec![Some(Player::One), Some(Player::Two)]);
        assert!(game.validate().contains(&Violation::MissingOwner(2)));
    }

    #[test]
    fn dangling_edge_and_bad_initial() {
        let mut g = LabeledGraph::new();
        let a = g.add_labeled_vertex("a", &[]);
        g.add_edge(a, 7);
        g.set_initial(3);
        let report = g.validate();
        assert!(report.contains(&Violation::DanglingEdge { from: 0, to: 7 }));
        assert!(report.contains(&Violation::BadInitial(3)));
    }
}
