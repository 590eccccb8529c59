//! Serializable command results and their plain-text rendering.

use std::fmt::Write as _;

use covgame::game_cover::StrategyMove;
use covgame::model::PropId;
use covgame::{EndComponent, LabeledGraph, Path, PropSet, Result, TesterStrategy};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEntry {
    pub vertex: String,
    pub covered: Vec<String>,
    pub choose: String,
    pub budget: usize,
}

/// Witness attached to an answer: a path or strategy for yes answers, an end
/// component for no answers on controllably recurrent games.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Path {
        path: Vec<String>,
        covered: Vec<String>,
    },
    Strategy {
        target: usize,
        guaranteed_steps: usize,
        moves: Vec<MoveEntry>,
    },
    EndComponent {
        vertices: Vec<String>,
        props: Vec<String>,
    },
    None,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::Path { .. } => "path",
            Certificate::Strategy { .. } => "strategy",
            Certificate::EndComponent { .. } => "end-component",
            Certificate::None => "none",
        }
    }

    pub fn path(g: &LabeledGraph, path: &Path) -> Self {
        Certificate::Path {
            path: path.names(g),
            covered: g.prop_set_names(covgame::cover_of(g, path)),
        }
    }

    pub fn strategy(g: &LabeledGraph, s: &TesterStrategy) -> Self {
        Certificate::Strategy {
            target: s.target,
            guaranteed_steps: s.guaranteed_steps,
            moves: s
                .iter()
                .map(|(v, covered, mv)| MoveEntry {
                    vertex: g.vertex_name(v).to_string(),
                    covered: g.prop_set_names(covered),
                    choose: g.vertex_name(mv.choose).to_string(),
                    budget: mv.budget,
                })
                .collect(),
        }
    }

    pub fn end_component(g: &LabeledGraph, ec: &EndComponent) -> Self {
        Certificate::EndComponent {
            vertices: ec.vertices.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
            props: g.prop_set_names(ec.props),
        }
    }
}

fn vertex(g: &LabeledGraph, name: &str) -> Result<usize, String> {
    g.vertex_id(name).ok_or_else(|| format!("unknown vertex '{name}'"))
}

fn props(g: &LabeledGraph, names: &[String]) -> Result<PropSet, String> {
    names
        .iter()
        .map(|n| g.prop_id(n).ok_or_else(|| format!("unknown proposition '{n}'")))
        .collect::<Result<Vec<PropId>, String>>()
        .map(|ids| ids.into_iter().collect())
}

/// Rebuilds a strategy from its named moves.
pub fn strategy_from_entries(
    g: &LabeledGraph,
    target: usize,
    guaranteed_steps: usize,
    moves: &[MoveEntry],
) -> Result<TesterStrategy, String> {
    let mut s = TesterStrategy::new(target, guaranteed_steps);
    for entry in moves {
        let mv = StrategyMove {
            choose: vertex(g, &entry.choose)?,
            budget: entry.budget,
        };
        s.insert(vertex(g, &entry.vertex)?, props(g, &entry.covered)?, mv);
    }
    Ok(s)
}

pub fn vertices_by_name(g: &LabeledGraph, names: &[String]) -> Result<Vec<usize>, String> {
    names.iter().map(|n| vertex(g, n)).collect()
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub command: &'static str,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub decision: bool,
    pub value: Option<usize>,
    pub witness: Option<Vec<String>>,
    pub steps_used: Option<usize>,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub patched_self_loops: Vec<String>,
}

impl SolveReport {
    pub fn human(&self) -> String {
        let mut out = String::new();
        let yes_no = if self.decision { "yes" } else { "no" };
        let _ = writeln!(out, "decision: {yes_no}");
        if let Some(v) = self.value {
            let _ = writeln!(out, "value: {v}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {}", w.join(","));
        }
        if let Some(s) = self.steps_used {
            let _ = writeln!(out, "steps: {s}");
        }
        match &self.certificate {
            Certificate::Strategy { moves, guaranteed_steps, .. } => {
                let _ = writeln!(out, "strategy: {} moves, wins within {guaranteed_steps} steps", moves.len());
                for mv in moves {
                    let _ = writeln!(
                        out,
                        "  at {} having {{{}}}: go to {} ({} steps left)",
                        mv.vertex,
                        mv.covered.join(","),
                        mv.choose,
                        mv.budget
                    );
                }
            }
            Certificate::EndComponent { vertices, props } => {
                let _ = writeln!(
                    out,
                    "end component: {} covering {{{}}}",
                    vertices.join(","),
                    props.join(",")
                );
            }
            Certificate::Path { .. } | Certificate::None => {}
        }
        if !self.patched_self_loops.is_empty() {
            let _ = writeln!(out, "patched self-loops: {}", self.patched_self_loops.join(","));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RecurrenceReport {
    pub command: &'static str,
    pub kind: &'static str,
    pub recurrent: bool,
    pub counterexample: Option<String>,
    /// Coverage value from the linear-time path, recurrent graphs only.
    pub value: Option<usize>,
}

impl RecurrenceReport {
    pub fn human(&self) -> String {
        let mut out = format!("recurrent: {}\n", if self.recurrent { "yes" } else { "no" });
        if let Some(c) = &self.counterexample {
            let _ = writeln!(out, "counterexample: {c}");
        }
        if let Some(v) = self.value {
            let _ = writeln!(out, "value: {v}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub command: &'static str,
    pub certificate: &'static str,
    pub m: usize,
    pub valid: bool,
    pub reason: Option<String>,
}

impl CertifyReport {
    pub fn human(&self) -> String {
        match &self.reason {
            None => format!("valid {} certificate for m = {}\n", self.certificate, self.m),
            Some(r) => format!("invalid {} certificate: {r}\n", self.certificate),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub kind: &'static str,
    pub m: usize,
    pub k: Option<usize>,
    pub solver: bool,
    pub oracle: bool,
    pub agree: bool,
}

impl VerifyReport {
    pub fn human(&self) -> String {
        format!(
            "solver: {}\noracle: {}\n{}\n",
            self.solver,
            self.oracle,
            if self.agree { "agree" } else { "DISAGREE" }
        )
    }
}
