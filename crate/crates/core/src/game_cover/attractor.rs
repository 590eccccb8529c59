use std::collections::VecDeque;

use crate::model::Player;

/// Attractor of `target` for `player` over an arena given by successor lists.
///
/// `rank[s] = Some(r)` iff `player` can force a visit to `target` from `s`
/// within `r` steps, and `r` is the least such bound. Successor lists must be
/// duplicate-free.
pub(crate) fn attractor(
    succ: &[Vec<usize>],
    owner: impl Fn(usize) -> Player,
    player: Player,
    target: impl Fn(usize) -> bool,
) -> Vec<Option<usize>> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (s, next) in succ.iter().enumerate() {
        for &t in next {
            pred[t].push(s);
        }
    }
    let mut pending: Vec<usize> = succ.iter().map(Vec::len).collect();
    let mut rank = vec![None; n];
    let mut queue = VecDeque::new();
    for s in (0..n).filter(|&s| target(s)) {
        rank[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(s) = queue.pop_front() {
        let r = rank[s].expect("queued states are ranked") + 1;
        for &p in &pred[s] {
            if rank[p].is_some() {
                continue;
            }
            if owner(p) == player {
                rank[p] = Some(r);
                queue.push_back(p);
            } else {
                pending[p] -= 1;
                if pending[p] == 0 {
                    rank[p] = Some(r);
                    queue.push_back(p);
                }
            }
        }
    }
    rank
}
