//! End components of the game read as an MDP in which player 1 moves
//! uniformly at random: strongly connected vertex sets closed under every
//! player 1 edge.

use crate::model::{LabeledGameGraph, Player, PropSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndComponent {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub props: PropSet,
}

/// `members` (containing `root`) is strongly connected through edges inside it.
fn strongly_connected(g: &LabeledGameGraph, members: &[bool], root: usize) -> bool {
    let (fwd, bwd) = reach_within(g, members, root);
    let n = g.num_vertices();
    let all = (0..n).filter(|&v| members[v]).all(|v| fwd[v] && bwd[v]);
    let count = members.iter().filter(|&&m| m).count();
    all && (count > 1 || g.has_edge(root, root))
}

/// Forward and backward reachability from `root` inside `members`.
fn reach_within(g: &LabeledGameGraph, members: &[bool], root: usize) -> (Vec<bool>, Vec<bool>) {
    let n = g.num_vertices();
    let mut pred = vec![Vec::new(); n];
    for u in (0..n).filter(|&u| members[u]) {
        for &w in g.successors(u).iter().filter(|&&w| members[w]) {
            pred[w].push(u);
        }
    }
    let search = |next: &dyn Fn(usize) -> Vec<usize>| {
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for w in next(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = search(&|v| {
        g.successors(v)
            .iter()
            .copied()
            .filter(|&w| members[w])
            .collect()
    });
    let bwd = search(&|v| pred[v].clone());
    (fwd, bwd)
}

/// Checks that `vertices` is an end component containing the initial vertex
/// whose label union has fewer than `m` propositions.
pub(crate) fn verify(g: &LabeledGameGraph, vertices: &[usize], m: usize) -> bool {
    let n = g.num_vertices();
    if vertices.iter().any(|&v| v >= n) {
        return false;
    }
    let mut members = vec![false; n];
    for &v in vertices {
        members[v] = true;
    }
    let init = g.initial();
    if !members[init] {
        return false;
    }
    let closed = vertices
        .iter()
        .filter(|&&u| g.owner(u) == Player::One)
        .all(|&u| g.successors(u).iter().all(|&w| members[w]));
    closed
        && strongly_connected(g, &members, init)
        && g.label_union(vertices.iter().copied()).len() < m
}

/// Largest end component containing the initial vertex among `allowed`
/// vertices, if any.
pub(crate) fn maximal_within(g: &LabeledGameGraph, allowed: &[bool]) -> Option<EndComponent> {
    let n = g.num_vertices();
    let init = g.initial();
    let mut inside = allowed.to_vec();
    loop {
        // drop player 1 vertices with an edge leaving the set and player 2
        // vertices with no edge staying in it
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !inside[v] {
                    continue;
                }
                let succ = g.successors(v);
                let keep = match g.owner(v) {
                    Player::One => succ.iter().all(|&w| inside[w]),
                    Player::Two => succ.iter().any(|&w| inside[w]),
                };
                if !keep {
                    inside[v] = false;
                    changed = true;
                }
            }
        }
        if !inside[init] {
            return None;
        }
        let (fwd, bwd) = reach_within(g, &inside, init);
        let component: Vec<bool> = (0..n).map(|v| inside[v] && fwd[v] && bwd[v]).collect();
        if component == inside {
            break;
        }
        inside = component;
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    debug_assert!(strongly_connected(g, &inside, init));
    Some(EndComponent {
        props: g.label_union(vertices.iter().copied()),
        vertices,
    })
}
