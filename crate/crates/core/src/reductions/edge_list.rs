use crate::error::{Error, Result};
use crate::model::SymbolTable;

/// Simple undirected graph; edges keep their input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    names: SymbolTable,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.names.intern(name)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self, v: usize) -> &str {
        self.names.name(v)
    }

    pub fn names(&self) -> &[String] {
        self.names.names()
    }

    /// Parses an edge list: one `u v` pair per line, or a lone name to
    /// declare an isolated vertex. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut h = UndirectedGraph::new();
        for_each_line(text, |tokens| match tokens {
            [v] => {
                h.add_vertex(v);
            }
            [a, b] => {
                let (a, b) = (h.add_vertex(a), h.add_vertex(b));
                h.add_edge(a, b);
            }
            _ => unreachable!(),
        })?;
        Ok(h)
    }

    pub fn render(&self) -> String {
        render(self.names.names(), self.edges.iter().copied())
    }

    /// Complete graph on `n` vertices named `u0..`.
    pub fn complete(n: usize) -> Self {
        let mut h = UndirectedGraph::new();
        for v in 0..n {
            h.add_vertex(&format!("u{v}"));
        }
        for a in 0..n {
            for b in a + 1..n {
                h.add_edge(a, b);
            }
        }
        h
    }

    /// Star with `leaves` leaves around the center `u0`.
    pub fn star(leaves: usize) -> Self {
        let mut h = UndirectedGraph::new();
        let center = h.add_vertex("u0");
        for l in 1..=leaves {
            let leaf = h.add_vertex(&format!("u{l}"));
            h.add_edge(center, leaf);
        }
        h
    }
}

/// Directed graph with sorted successor lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    names: SymbolTable,
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        let id = self.names.intern(name);
        if id == self.succ.len() {
            self.succ.push(Vec::new());
        }
        id
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if let Err(pos) = self.succ[from].binary_search(&to) {
            self.succ[from].insert(pos, to);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn name(&self, v: usize) -> &str {
        self.names.name(v)
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.names.get(name)
    }

    /// Same line format as [`UndirectedGraph::parse`], edges read as `u -> v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut h = Digraph::new();
        for_each_line(text, |tokens| match tokens {
            [v] => {
                h.add_vertex(v);
            }
            [a, b] => {
                let (a, b) = (h.add_vertex(a), h.add_vertex(b));
                h.add_edge(a, b);
            }
            _ => unreachable!(),
        })?;
        Ok(h)
    }

    pub fn render(&self) -> String {
        let edges = (0..self.succ.len()).flat_map(|v| self.succ[v].iter().map(move |&w| (v, w)));
        render(self.names.names(), edges)
    }
}

fn for_each_line(text: &str, mut f: impl FnMut(&[&str])) -> Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() > 2 {
            return Err(Error::parse(format!(
                "line {}: expected a vertex or an edge 'u v'",
                lineno + 1
            )));
        }
        f(&tokens);
    }
    Ok(())
}

fn render(names: &[String], edges: impl Iterator<Item = (usize, usize)>) -> String {
    let mut used = vec![false; names.len()];
    let mut out = String::new();
    for (a, b) in edges {
        used[a] = true;
        used[b] = true;
        out.push_str(&format!("{} {}\n", names[a], names[b]));
    }
    for (name, _) in names.iter().zip(&used).filter(|(_, &u)| !u) {
        out.push_str(&format!("{name}\n"));
    }
    out
}
