//! Values of the depth-bounded exploration game tree.

use super::product::ProductGame;
use crate::model::{LabeledGameGraph, Player, PropSet};

/// Value of the root with `depth` steps left, computed as a table over
/// `(product state, remaining steps)` one budget layer at a time.
pub(crate) fn value_by_table(product: &ProductGame, depth: usize) -> usize {
    let mut values: Vec<usize> = (0..product.num_states())
        .map(|s| product.covered(s).len())
        .collect();
    for _ in 0..depth {
        let next: Vec<usize> = (0..product.num_states())
            .map(|s| {
                let succ = product.successors(s).iter().map(|&t| values[t]);
                match product.owner(s) {
                    Player::One => succ.max(),
                    Player::Two => succ.min(),
                }
                .expect("product states are total")
            })
            .collect();
        if next == values {
            break;
        }
        values = next;
    }
    values[0]
}

/// Depth-first evaluation of the exploration tree without memoization. A
/// branch ends when `depth` is reached or when its label `(vertex, covered)`
/// repeats an ancestor's; leaves are worth `|covered|`.
pub(crate) fn value_by_tree_walk(game: &LabeledGameGraph, depth: usize) -> usize {
    let root = (game.initial(), game.label(game.initial()));
    let mut branch = vec![root];
    walk(game, &mut branch, depth)
}

fn walk(game: &LabeledGameGraph, branch: &mut Vec<(usize, PropSet)>, left: usize) -> usize {
    let &(v, covered) = branch.last().expect("branch holds the current node");
    if left == 0 || branch[..branch.len() - 1].contains(&(v, covered)) {
        return covered.len();
    }
    let mut best: Option<usize> = None;
    for &w in game.successors(v) {
        branch.push((w, covered.union(game.label(w))));
        let value = walk(game, branch, left - 1);
        branch.pop();
        best = Some(match (best, game.owner(v)) {
            (None, _) => value,
            (Some(b), Player::One) => b.max(value),
            (Some(b), Player::Two) => b.min(value),
        });
    }
    best.expect("game vertices are total")
}
