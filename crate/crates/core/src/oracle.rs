//! Ground truth for the untangling games.
//!
//! [`bfs_untangle`] searches the move graph at fixed word length, which is the
//! game's notion of "untanglable". The two analytic deciders answer the same
//! question in closed form for the 2-strand presentations, where fixed-length
//! reachability and triviality in the group coincide.

use std::collections::{HashMap, VecDeque};

use crate::braid::{all_moves, apply_move, BraidWord, Letter, Move, RuleSet};
use crate::error::{BraidError, Result};

/// Shortest move sequence from `word` to `11...1` using at most `max_depth`
/// moves at any position, or `None` if there is none.
pub fn bfs_untangle(word: &BraidWord, rules: &RuleSet, max_depth: usize) -> Option<Vec<Move>> {
    if word.is_identity() {
        return Some(Vec::new());
    }
    let mut parent: HashMap<BraidWord, Option<(BraidWord, Move)>> = HashMap::new();
    let mut frontier = VecDeque::from([(word.clone(), 0usize)]);
    parent.insert(word.clone(), None);

    while let Some((w, depth)) = frontier.pop_front() {
        if depth == max_depth {
            continue;
        }
        for mv in all_moves(&w, rules) {
            let next = apply_move(&w, mv, rules).expect("enumerated move applies");
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((w.clone(), mv)));
            if next.is_identity() {
                return Some(unwind(&parent, next));
            }
            frontier.push_back((next, depth + 1));
        }
    }
    None
}

fn unwind(parent: &HashMap<BraidWord, Option<(BraidWord, Move)>>, mut at: BraidWord) -> Vec<Move> {
    let mut path = Vec::new();
    while let Some((prev, mv)) = &parent[&at] {
        path.push(*mv);
        at = prev.clone();
    }
    path.reverse();
    path
}

fn check_two_strand(word: &BraidWord) -> Result<()> {
    match word.iter().position(|l| matches!(l, Letter::SigmaPlus1 | Letter::SigmaPlus2)) {
        Some(index) => Err(BraidError::Parse { index, symbol: word.letters()[index].as_char() }),
        None => Ok(()),
    }
}

/// Triviality in `<a, b | ab = ba = 1>`: the group is Z with `a -> 1`,
/// `b -> -1`, so a word is trivial iff it has as many `a` as `b`.
pub fn analytic_trivial_inverse(word: &BraidWord) -> Result<bool> {
    check_two_strand(word)?;
    let a = word.iter().filter(|&&l| l == Letter::SigmaMinus1).count();
    let b = word.iter().filter(|&&l| l == Letter::SigmaMinus2).count();
    Ok(a == b)
}

/// Triviality in `<a, b | aa = bb = 1>` by free cancellation of equal
/// neighbours after dropping `1`s.
pub fn analytic_trivial_involutive(word: &BraidWord) -> Result<bool> {
    check_two_strand(word)?;
    let mut stack: Vec<Letter> = Vec::new();
    for &l in word.iter().filter(|l| !l.is_identity()) {
        if stack.last() == Some(&l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(stack.is_empty())
}

/// Default search depth for 2-strand words: twice the length.
pub fn default_depth(n: usize) -> usize {
    2 * n
}
