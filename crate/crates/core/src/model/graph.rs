use std::collections::VecDeque;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::props::{PropId, PropSet, SymbolTable};
use super::validate::Validate;
use crate::error::{Error, Result};

/// Finite directed graph with an initial vertex and a proposition set per vertex.
///
/// Successor lists are kept sorted and duplicate-free, so every traversal in
/// this crate explores successors in ascending vertex id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: SymbolTable,
    props: SymbolTable,
    succ: Vec<Vec<usize>>,
    labels: Vec<PropSet>,
    initial: usize,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_prop(&mut self, name: &str) -> PropId {
        PropId(self.props.intern(name))
    }

    /// Adds a vertex, or replaces the labels of an existing vertex of the same name.
    pub fn add_vertex(&mut self, name: &str, labels: PropSet) -> usize {
        let id = self.vertices.intern(name);
        if id == self.succ.len() {
            self.succ.push(Vec::new());
            self.labels.push(labels);
        } else {
            self.labels[id] = labels;
        }
        id
    }

    /// Adds a vertex labeled by proposition names, interning unseen propositions.
    pub fn add_labeled_vertex(&mut self, name: &str, props: &[&str]) -> usize {
        let labels = props.iter().map(|p| self.add_prop(p)).collect();
        self.add_vertex(name, labels)
    }

    /// Adds the edge `from -> to`. `to` is not checked; dangling targets are
    /// reported by validation.
    pub fn add_edge(&mut self, from: usize, to: usize) {
        let succ = &mut self.succ[from];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
    }

    pub fn set_initial(&mut self, v: usize) {
        self.initial = v;
    }

    pub fn num_vertices(&self) -> usize {
        self.succ.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn num_props(&self) -> usize {
        self.props.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from < self.succ.len() && self.succ[from].binary_search(&to).is_ok()
    }

    pub fn label(&self, v: usize) -> PropSet {
        self.labels[v]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        self.vertices.name(v)
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.get(name)
    }

    pub fn vertex_names(&self) -> &[String] {
        self.vertices.names()
    }

    pub fn prop_name(&self, p: PropId) -> &str {
        self.props.name(p.0)
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props.get(name).map(PropId)
    }

    pub fn prop_names(&self) -> &[String] {
        self.props.names()
    }

    /// Names of the propositions in `set`, in universe order.
    pub fn prop_set_names(&self, set: PropSet) -> Vec<String> {
        set.iter().map(|p| self.prop_name(p).to_string()).collect()
    }

    pub fn label_union(&self, vertices: impl IntoIterator<Item = usize>) -> PropSet {
        vertices
            .into_iter()
            .fold(PropSet::EMPTY, |acc, v| acc.union(self.labels[v]))
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.succ.len()];
        for (u, succ) in self.succ.iter().enumerate() {
            for &v in succ {
                pred[v].push(u);
            }
        }
        pred
    }

    /// Vertices reachable from `from` (including `from`).
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        search(from, self.succ.len(), |v| &self.succ[v])
    }

    /// Vertices that can reach `to` (including `to`).
    pub fn reaching(&self, to: usize) -> Vec<bool> {
        let pred = self.predecessors();
        search(to, self.succ.len(), |v| &pred[v])
    }

    /// Adds a self-loop to every vertex without successors and returns them.
    pub fn patch_self_loops(&mut self) -> Vec<usize> {
        let sinks: Vec<usize> = (0..self.succ.len())
            .filter(|&v| self.succ[v].is_empty())
            .collect();
        for &v in &sinks {
            self.succ[v].push(v);
        }
        sinks
    }

}

fn search<'a>(start: usize, n: usize, next: impl Fn(usize) -> &'a [usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in next(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Player {
    /// The tester.
    One,
    /// The system, or adversary.
    Two,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl TryFrom<u8> for Player {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            other => Err(format!("owner must be 1 or 2, got {other}")),
        }
    }
}

impl From<Player> for u8 {
    fn from(p: Player) -> u8 {
        match p {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

/// Labeled graph whose vertices are partitioned between the two players.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledGameGraph {
    graph: LabeledGraph,
    owners: Vec<Option<Player>>,
}

impl LabeledGameGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps `graph`, assigning owners by position. Vertices beyond the end
    /// of `owners` have no owner and fail validation.
    pub fn from_parts(graph: LabeledGraph, owners: Vec<Option<Player>>) -> Self {
        LabeledGameGraph { graph, owners }
    }

    pub fn owned_by(graph: LabeledGraph, player: Player) -> Self {
        let owners = vec![Some(player); graph.num_vertices()];
        LabeledGameGraph { graph, owners }
    }

    pub fn add_prop(&mut self, name: &str) -> PropId {
        self.graph.add_prop(name)
    }

    pub fn add_vertex(&mut self, name: &str, owner: Player, labels: PropSet) -> usize {
        let id = self.graph.add_vertex(name, labels);
        if id == self.owners.len() {
            self.owners.push(Some(owner));
        } else {
            self.owners[id] = Some(owner);
        }
        id
    }

    pub fn add_labeled_vertex(&mut self, name: &str, owner: Player, props: &[&str]) -> usize {
        let labels = props.iter().map(|p| self.graph.add_prop(p)).collect();
        self.add_vertex(name, owner, labels)
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        self.graph.add_edge(from, to);
    }

    pub fn set_initial(&mut self, v: usize) {
        self.graph.set_initial(v);
    }

    pub fn set_owner(&mut self, v: usize, owner: Option<Player>) {
        if v >= self.owners.len() {
            self.owners.resize(v + 1, None);
        }
        self.owners[v] = owner;
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    /// Owner of `v`. Panics on a vertex without owner; validated games have none.
    pub fn owner(&self, v: usize) -> Player {
        self.owners
            .get(v)
            .copied()
            .flatten()
            .unwrap_or_else(|| panic!("vertex {v} has no owner"))
    }

    pub fn owner_opt(&self, v: usize) -> Option<Player> {
        self.owners.get(v).copied().flatten()
    }

    pub fn patch_self_loops(&mut self) -> Vec<usize> {
        self.graph.patch_self_loops()
    }
}

impl Deref for LabeledGameGraph {
    type Target = LabeledGraph;

    fn deref(&self) -> &LabeledGraph {
        &self.graph
    }
}

/// Erases ownership from a game in which the system never has a choice.
pub fn game_to_graph(g: &LabeledGameGraph) -> Result<LabeledGraph> {
    g.validate().into_result()?;
    for v in 0..g.num_vertices() {
        if g.owner(v) == Player::Two && g.successors(v).len() != 1 {
            return Err(Error::NotDeterministic(v));
        }
    }
    Ok(g.graph.clone())
}

/// Finite sequence of vertices. A path with `j + 1` vertices has taken `j` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn steps(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn names(&self, g: &LabeledGraph) -> Vec<String> {
        self.0.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    pub fn from_names<S: AsRef<str>>(g: &LabeledGraph, names: &[S]) -> Result<Self> {
        names
            .iter()
            .map(|n| {
                g.vertex_id(n.as_ref())
                    .ok_or_else(|| Error::parse(format!("unknown vertex '{}'", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Path)
    }
}

/// Union of the labels of every vertex on `path`.
pub fn cover_of(g: &LabeledGraph, path: &Path) -> PropSet {
    g.label_union(path.vertices().iter().copied())
}

/// True iff `path` is nonempty, starts at the initial vertex and follows edges.
pub fn path_check(g: &LabeledGraph, path: &Path) -> bool {
    let vs = path.vertices();
    match vs.first() {
        Some(&first) if first == g.initial() => {}
        _ => return false,
    }
    vs.iter().all(|&v| v < g.num_vertices()) && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> LabeledGraph {
        let mut g = LabeledGraph::new();
        let a = g.add_labeled_vertex("a", &["p"]);
        let b = g.add_labeled_vertex("b", &["q"]);
        let c = g.add_labeled_vertex("c", &["r"]);
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(c, a);
        g.set_initial(a);
        g
    }

    #[test]
    fn cover_of_triangle_path() {
        let g = triangle();
        let path = Path::new(vec![0, 1, 2]);
        assert!(path_check(&g, &path));
        assert_eq!(g.prop_set_names(cover_of(&g, &path)), ["p", "q", "r"]);
        assert_eq!(path.steps(), 2);
    }

    #[test]
    fn single_vertex_path_covers_its_label() {
        let g = triangle();
        let path = Path::new(vec![0]);
        assert!(path_check(&g, &path));
        assert_eq!(cover_of(&g, &path), g.label(0));
        assert_eq!(path.steps(), 0);
    }

    #[test]
    fn path_check_rejects_missing_edge_and_wrong_start() {
        let g = triangle();
        assert!(!path_check(&g, &Path::new(vec![0, 2])));
        assert!(!path_check(&g, &Path::new(vec![1, 2])));
        assert!(!path_check(&g, &Path::new(vec![])));
    }

    #[test]
    fn game_to_graph_requires_deterministic_system() {
        let mut g = LabeledGameGraph::new();
        let a = g.add_labeled_vertex("a", Player::One, &[]);
        let b = g.add_labeled_vertex("b", Player::Two, &["p"]);
        g.add_edge(a, b);
        g.add_edge(b, b);
        g.set_initial(a);
        let erased = game_to_graph(&g).unwrap();
        assert_eq!(erased.num_vertices(), 2);
        assert!(erased.has_edge(0, 1) && erased.has_edge(1, 1));

        g.add_edge(b, a);
        assert!(matches!(game_to_graph(&g), Err(Error::NotDeterministic(1))));
    }

    #[test]
    fn reachability_helpers() {
        let mut g = triangle();
        let d = g.add_labeled_vertex("d", &[]);
        g.add_edge(d, 0);
        assert_eq!(g.reachable_from(0), vec![true, true, true, false]);
        assert_eq!(g.reaching(0), vec![true, true, true, true]);
    }
}
