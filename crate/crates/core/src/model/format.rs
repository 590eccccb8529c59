//! JSON interchange format for graphs, games and systems.
//!
//! Graphs and games share one shape; a model is a game as soon as one vertex
//! carries an `owner`:
//!
//! ```json
//! { "ap": ["p", "q"],
//!   "vertices": [{"id": "a", "props": ["p"], "owner": 1}, {"id": "b", "props": ["q"], "owner": 2}],
//!   "edges": [["a", "b"], ["b", "a"]],
//!   "initial": "a" }
//! ```
//!
//! Systems use `states`, `alphabet`, `transitions: [[q, letter, q'], ...]`,
//! `initial` and `labels: {state: [prop, ...]}`. Any document may carry a free-form
//! `metadata` object.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::graph::{LabeledGameGraph, LabeledGraph, Player};
use super::props::PropSet;
use super::system::SystemAutomaton;
use crate::error::{Error, Result};

pub type Metadata = serde_json::Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Graph(LabeledGraph),
    Game(LabeledGameGraph),
    System(SystemAutomaton),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Graph(_) => ModelKind::Graph,
            Model::Game(_) => ModelKind::Game,
            Model::System(_) => ModelKind::System,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Graph,
    Game,
    System,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(ModelKind::Graph),
            "game" => Ok(ModelKind::Game),
            "system" => Ok(ModelKind::System),
            other => Err(Error::parse(format!("unknown model kind '{other}'"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default)]
    ap: Vec<String>,
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    initial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    #[serde(default)]
    props: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    owner: Option<Player>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    #[serde(default)]
    ap: Vec<String>,
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: String,
    #[serde(default)]
    transitions: Vec<(String, String, String)>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

/// Parses a model, inferring its kind unless `kind` is given.
pub fn parse_model(text: &str, kind: Option<ModelKind>) -> Result<(Model, Option<Metadata>)> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("model must be a JSON object"))?;
    let kind = match kind {
        Some(k) => k,
        None if obj.contains_key("states") => ModelKind::System,
        None => {
            let has_owner = obj
                .get("vertices")
                .and_then(Value::as_array)
                .is_some_and(|vs| vs.iter().any(|v| v.get("owner").is_some()));
            if has_owner {
                ModelKind::Game
            } else {
                ModelKind::Graph
            }
        }
    };
    match kind {
        ModelKind::System => {
            let doc: SystemDoc = serde_json::from_value(value)?;
            let meta = doc.metadata.clone();
            Ok((Model::System(system_from_doc(doc)?), meta))
        }
        ModelKind::Graph | ModelKind::Game => {
            let doc: GraphDoc = serde_json::from_value(value)?;
            let meta = doc.metadata.clone();
            let (graph, owners) = graph_from_doc(doc)?;
            let model = if kind == ModelKind::Game {
                Model::Game(LabeledGameGraph::from_parts(graph, owners))
            } else {
                Model::Graph(graph)
            };
            Ok((model, meta))
        }
    }
}

fn labels_of(
    props: &[String],
    lookup: impl Fn(&str) -> Option<usize>,
    owner: &str,
) -> Result<PropSet> {
    let mut set = PropSet::EMPTY;
    for p in props {
        let id = lookup(p)
            .ok_or_else(|| Error::parse(format!("'{owner}' uses undeclared proposition '{p}'")))?;
        set.insert(super::PropId(id));
    }
    Ok(set)
}

fn graph_from_doc(doc: GraphDoc) -> Result<(LabeledGraph, Vec<Option<Player>>)> {
    let mut g = LabeledGraph::new();
    for p in &doc.ap {
        g.add_prop(p);
    }
    if g.num_props() != doc.ap.len() {
        return Err(Error::parse("duplicate proposition in 'ap'"));
    }
    let mut owners = Vec::with_capacity(doc.vertices.len());
    for v in &doc.vertices {
        if g.vertex_id(&v.id).is_some() {
            return Err(Error::parse(format!("duplicate vertex '{}'", v.id)));
        }
        let labels = labels_of(&v.props, |p| g.prop_id(p).map(|p| p.0), &v.id)?;
        g.add_vertex(&v.id, labels);
        owners.push(v.owner);
    }
    let lookup = |g: &LabeledGraph, name: &str| {
        g.vertex_id(name)
            .ok_or_else(|| Error::parse(format!("unknown vertex '{name}'")))
    };
    for (from, to) in &doc.edges {
        let (from, to) = (lookup(&g, from)?, lookup(&g, to)?);
        g.add_edge(from, to);
    }
    let init = lookup(&g, &doc.initial)?;
    g.set_initial(init);
    Ok((g, owners))
}

fn system_from_doc(doc: SystemDoc) -> Result<SystemAutomaton> {
    let mut sys = SystemAutomaton::new();
    for p in &doc.ap {
        sys.add_prop(p);
    }
    if sys.num_props() != doc.ap.len() {
        return Err(Error::parse("duplicate proposition in 'ap'"));
    }
    for a in &doc.alphabet {
        sys.add_letter(a);
    }
    for q in &doc.states {
        if sys.state_id(q).is_some() {
            return Err(Error::parse(format!("duplicate state '{q}'")));
        }
        sys.add_state(q, PropSet::EMPTY);
    }
    for (q, props) in &doc.labels {
        let id = sys
            .state_id(q)
            .ok_or_else(|| Error::parse(format!("labels for unknown state '{q}'")))?;
        let labels = labels_of(props, |p| sys.prop_id(p).map(|p| p.0), q)?;
        sys.add_state(q, labels);
        debug_assert_eq!(sys.state_id(q), Some(id));
    }
    let state = |sys: &SystemAutomaton, name: &str| {
        sys.state_id(name)
            .ok_or_else(|| Error::parse(format!("unknown state '{name}'")))
    };
    for (from, letter, to) in &doc.transitions {
        let a = sys
            .letter_id(letter)
            .ok_or_else(|| Error::parse(format!("unknown letter '{letter}'")))?;
        let (from, to) = (state(&sys, from)?, state(&sys, to)?);
        sys.add_transition(from, a, to);
    }
    let init = state(&sys, &doc.initial)?;
    sys.set_initial(init);
    Ok(sys)
}

fn graph_doc(g: &LabeledGraph, owner: impl Fn(usize) -> Option<Player>) -> GraphDoc {
    GraphDoc {
        ap: g.prop_names().to_vec(),
        vertices: (0..g.num_vertices())
            .map(|v| VertexDoc {
                id: g.vertex_name(v).to_string(),
                props: g.prop_set_names(g.label(v)),
                owner: owner(v),
            })
            .collect(),
        edges: (0..g.num_vertices())
            .flat_map(|v| g.successors(v).iter().map(move |&w| (v, w)))
            .map(|(v, w)| (g.vertex_name(v).to_string(), g.vertex_name(w).to_string()))
            .collect(),
        initial: g.vertex_name(g.initial()).to_string(),
        metadata: None,
    }
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("model documents always serialize");
    out.push('\n');
    out
}

pub fn render_graph(g: &LabeledGraph, metadata: Option<&Metadata>) -> String {
    let mut doc = graph_doc(g, |_| None);
    doc.metadata = metadata.cloned();
    to_pretty(&doc)
}

pub fn render_game(g: &LabeledGameGraph, metadata: Option<&Metadata>) -> String {
    let mut doc = graph_doc(g.graph(), |v| g.owner_opt(v));
    doc.metadata = metadata.cloned();
    to_pretty(&doc)
}

pub fn render_system(sys: &SystemAutomaton, metadata: Option<&Metadata>) -> String {
    let nq = sys.num_states();
    let mut transitions = Vec::new();
    for q in 0..nq {
        for a in 0..sys.num_letters() {
            for &to in sys.successors(q, a) {
                transitions.push((
                    sys.state_name(q).to_string(),
                    sys.letter_name(a).to_string(),
                    sys.state_name(to).to_string(),
                ));
            }
        }
    }
    let doc = SystemDoc {
        ap: sys.prop_names().to_vec(),
        states: (0..nq).map(|q| sys.state_name(q).to_string()).collect(),
        alphabet: (0..sys.num_letters())
            .map(|a| sys.letter_name(a).to_string())
            .collect(),
        initial: sys.state_name(sys.initial()).to_string(),
        transitions,
        labels: (0..nq)
            .filter(|&q| !sys.label(q).is_empty())
            .map(|q| {
                let names = sys
                    .label(q)
                    .iter()
                    .map(|p| sys.prop_names()[p.0].clone())
                    .collect();
                (sys.state_name(q).to_string(), names)
            })
            .collect(),
        metadata: metadata.cloned(),
    };
    to_pretty(&doc)
}
