use serde_json::json;

use super::edge_list::{Digraph, UndirectedGraph};
use super::formula::{CnfFormula, QbfFormula, Quantifier};
use crate::error::{Error, Result};
use crate::model::{LabeledGameGraph, LabeledGraph, Metadata, Player, PropSet};

/// Generated instance with its coverage parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget<M> {
    pub model: M,
    /// Coverage target `m` tied to the source question, if the gadget has one.
    pub target: Option<usize>,
    /// Step bound `k`, for bounded-time gadgets.
    pub steps: Option<usize>,
    /// Clauses satisfied while simplifying the formula. Their propositions
    /// label the initial vertex, since every play covers them.
    pub offset: usize,
    pub metadata: Metadata,
}

fn metadata(value: serde_json::Value) -> Metadata {
    match value {
        serde_json::Value::Object(map) => map,
        _ => unreachable!("metadata is built from object literals"),
    }
}

/// Formula after fixing pure literals to fixpoint.
struct Simplified {
    /// Remaining variables in gadget order.
    vars: Vec<usize>,
    /// Remaining clauses as (original index, literals). Clauses emptied by
    /// universal reduction stay, they can no longer be satisfied.
    clauses: Vec<(usize, Vec<i32>)>,
    /// Original indices of the clauses satisfied by fixed variables.
    satisfied: Vec<usize>,
    fixed: Vec<(usize, bool)>,
}

/// Fixes every variable occurring with one polarity only: existential ones
/// to satisfy their literal, universal ones to falsify it.
fn simplify(
    formula: &CnfFormula,
    order: &[usize],
    quantifier: impl Fn(usize) -> Quantifier,
) -> Simplified {
    let mut alive: Vec<Option<Vec<i32>>> =
        formula.clauses().iter().map(|c| Some(c.clone())).collect();
    let mut satisfied = Vec::new();
    let mut fixed = Vec::new();
    loop {
        let mut polarity = vec![(false, false); formula.num_vars() + 1];
        for lit in alive.iter().flatten().flatten() {
            let entry = &mut polarity[lit.unsigned_abs() as usize];
            if *lit > 0 {
                entry.0 = true;
            } else {
                entry.1 = true;
            }
        }
        let Some(&var) = order
            .iter()
            .find(|&&v| polarity[v].0 != polarity[v].1)
        else {
            break;
        };
        let lit = if polarity[var].0 { var as i32 } else { -(var as i32) };
        match quantifier(var) {
            Quantifier::Exists => {
                fixed.push((var, lit > 0));
                for (i, slot) in alive.iter_mut().enumerate() {
                    if slot.as_ref().is_some_and(|c| c.contains(&lit)) {
                        *slot = None;
                        satisfied.push(i);
                    }
                }
            }
            Quantifier::Forall => {
                fixed.push((var, lit < 0));
                for clause in alive.iter_mut().flatten() {
                    clause.retain(|&l| l != lit);
                }
            }
        }
    }
    let clauses: Vec<(usize, Vec<i32>)> = alive
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (i, c)))
        .collect();
    let vars = order
        .iter()
        .copied()
        .filter(|&v| {
            clauses
                .iter()
                .any(|(_, c)| c.iter().any(|l| l.unsigned_abs() as usize == v))
        })
        .collect();
    Simplified {
        vars,
        clauses,
        satisfied,
        fixed,
    }
}

/// Builds the variable/clause-chain game. Variable vertex `x_j` branches into
/// the chain of clauses made true by `x_j` and the chain of clauses made true
/// by its negation; both chains continue to the next variable. The final
/// vertex is absorbing. Clauses already satisfied label the initial vertex.
fn chain_game(
    s: &Simplified,
    owner: impl Fn(usize) -> Player,
    num_vars: usize,
    num_clauses: usize,
) -> LabeledGameGraph {
    let mut g = LabeledGameGraph::new();
    let clause_props: Vec<PropSet> = (0..num_clauses)
        .map(|i| PropSet::singleton(g.add_prop(&format!("C{}", i + 1))))
        .collect();
    let x = PropSet::singleton(g.add_prop("X"));
    let entry = s
        .satisfied
        .iter()
        .fold(x, |acc, &i| acc.union(clause_props[i]));
    let var_vertices: Vec<usize> = s
        .vars
        .iter()
        .enumerate()
        .map(|(j, &v)| g.add_vertex(&format!("x{v}"), owner(v), if j == 0 { entry } else { x }))
        .collect();
    let terminal_label = if var_vertices.is_empty() { entry } else { x };
    let terminal = g.add_vertex(&format!("x{}", num_vars + 1), Player::Two, terminal_label);
    g.add_edge(terminal, terminal);
    for (j, &var) in s.vars.iter().enumerate() {
        let next = var_vertices.get(j + 1).copied().unwrap_or(terminal);
        for (lit, prefix) in [(var as i32, ""), (-(var as i32), "~")] {
            let mut prev = var_vertices[j];
            for (orig, clause) in &s.clauses {
                if clause.contains(&lit) {
                    let name = format!("{prefix}x{var}_C{}", orig + 1);
                    let v = g.add_vertex(&name, Player::One, clause_props[*orig]);
                    g.add_edge(prev, v);
                    prev = v;
                }
            }
            g.add_edge(prev, next);
        }
    }
    g.set_initial(var_vertices.first().copied().unwrap_or(terminal));
    g
}

fn fixed_json(fixed: &[(usize, bool)]) -> serde_json::Value {
    fixed
        .iter()
        .map(|&(v, val)| (format!("x{v}"), json!(val)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

/// SAT gadget. Its coverage value is the maximum number of simultaneously
/// satisfiable clauses plus one.
pub fn sat_to_graph(phi: &CnfFormula) -> Result<Gadget<LabeledGraph>> {
    let order: Vec<usize> = (1..=phi.num_vars()).collect();
    let s = simplify(phi, &order, |_| Quantifier::Exists);
    let game = chain_game(&s, |_| Player::One, phi.num_vars(), phi.num_clauses());
    let target = phi.num_clauses() + 1;
    let metadata = metadata(json!({
        "reduction": "sat",
        "parameters": {"variables": phi.num_vars(), "clauses": phi.num_clauses()},
        "offset": s.satisfied.len(),
        "target": target,
        "trivial": s.clauses.is_empty(),
        "fixed": fixed_json(&s.fixed),
        "property": "coverage value = max satisfiable clauses + 1; satisfiable iff value >= target",
    }));
    Ok(Gadget {
        model: game.into_graph(),
        target: Some(target),
        steps: None,
        offset: s.satisfied.len(),
        metadata,
    })
}

/// QBF gadget: existential variables belong to player 1, universal ones to
/// player 2. The formula is true iff player 1 can cover `target` propositions.
pub fn qbf_to_game(phi: &QbfFormula) -> Result<Gadget<LabeledGameGraph>> {
    let order: Vec<usize> = phi.prefix().iter().map(|&(_, v)| v).collect();
    let s = simplify(phi.matrix(), &order, |v| phi.quantifier_of(v));
    let owner = |v: usize| match phi.quantifier_of(v) {
        Quantifier::Exists => Player::One,
        Quantifier::Forall => Player::Two,
    };
    let game = chain_game(&s, owner, phi.matrix().num_vars(), phi.matrix().num_clauses());
    let target = phi.matrix().num_clauses() + 1;
    let metadata = metadata(json!({
        "reduction": "qbf",
        "parameters": {"variables": phi.matrix().num_vars(), "clauses": phi.matrix().num_clauses()},
        "offset": s.satisfied.len(),
        "target": target,
        "trivial": s.clauses.is_empty(),
        "fixed": fixed_json(&s.fixed),
        "property": "formula is true iff coverage value >= target",
    }));
    Ok(Gadget {
        model: game,
        target: Some(target),
        steps: None,
        offset: s.satisfied.len(),
        metadata,
    })
}

/// Vertex-cover gadget: player 1 picks an edge, player 2 picks one of its
/// endpoints, and the play returns to the start. Its coverage value equals
/// the minimum vertex cover size plus one.
pub fn vc_to_game(h: &UndirectedGraph) -> Result<Gadget<LabeledGameGraph>> {
    if h.edges().is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let mut g = LabeledGameGraph::new();
    let vertex_props: Vec<PropSet> = h
        .names()
        .iter()
        .map(|name| PropSet::singleton(g.add_prop(name)))
        .collect();
    let mut marker = String::from("$");
    while h.names().contains(&marker) {
        marker.push('$');
    }
    let dollar = PropSet::singleton(g.add_prop(&marker));
    let start = g.add_vertex("v_in", Player::One, dollar);
    for (i, &(a, b)) in h.edges().iter().enumerate() {
        let edge = g.add_vertex(&format!("e{}", i + 1), Player::Two, dollar);
        g.add_edge(start, edge);
        for (j, endpoint) in [a, b].into_iter().enumerate() {
            let side = g.add_vertex(&format!("e{}_{}", i + 1, j + 1), Player::One, vertex_props[endpoint]);
            g.add_edge(edge, side);
            g.add_edge(side, start);
        }
    }
    g.set_initial(start);
    let mut touched = vec![false; h.num_vertices()];
    for &(a, b) in h.edges() {
        touched[a] = true;
        touched[b] = true;
    }
    let isolated: Vec<&str> = (0..h.num_vertices())
        .filter(|&v| !touched[v])
        .map(|v| h.name(v))
        .collect();
    let metadata = metadata(json!({
        "reduction": "vc",
        "parameters": {"vertices": h.num_vertices(), "edges": h.edges().len()},
        "offset": 0,
        "isolated": isolated,
        "property": "coverage value = minimum vertex cover + 1",
    }));
    Ok(Gadget {
        model: g,
        target: None,
        steps: None,
        offset: 0,
        metadata,
    })
}

/// Hamiltonian-path gadget: every vertex carries its own proposition, sinks
/// get self-loops. Some prefix of `n - 1` steps covers all `n` propositions
/// iff `h` has a Hamiltonian path from `start`.
pub fn hampath_to_bounded(h: &Digraph, start: usize) -> Result<Gadget<LabeledGraph>> {
    let n = h.num_vertices();
    if n == 0 {
        return Err(Error::parse("graph has no vertices"));
    }
    if start >= n {
        return Err(Error::parse(format!("start vertex {start} does not exist")));
    }
    let mut g = LabeledGraph::new();
    for v in 0..n {
        g.add_labeled_vertex(h.name(v), &[h.name(v)]);
    }
    for v in 0..n {
        for &w in h.successors(v) {
            g.add_edge(v, w);
        }
    }
    let patched: Vec<String> = g
        .patch_self_loops()
        .into_iter()
        .map(|v| g.vertex_name(v).to_string())
        .collect();
    g.set_initial(start);
    let metadata = metadata(json!({
        "reduction": "hampath",
        "parameters": {"vertices": n, "start": h.name(start)},
        "offset": 0,
        "target": n,
        "steps": n - 1,
        "patched_self_loops": patched,
        "property": "bounded coverage (m = target, k = steps) holds iff a Hamiltonian path starts at start",
    }));
    Ok(Gadget {
        model: g,
        target: Some(n),
        steps: Some(n - 1),
        offset: 0,
        metadata,
    })
}
