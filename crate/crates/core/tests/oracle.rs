//! The BFS oracle against closed-form deciders and plain iterative deepening.

use braidq::oracle::{analytic_trivial_inverse, analytic_trivial_involutive, bfs_untangle, default_depth};
use braidq::{all_moves, apply_move, exponent_sum, BraidWord, Letter, RuleSet};

type Decider = fn(&BraidWord) -> braidq::Result<bool>;

fn all_words(alphabet: &[Letter], n: usize) -> Vec<BraidWord> {
    let mut words = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                alphabet.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    words.into_iter().map(BraidWord::new).collect()
}

/// Depth-limited DFS without memoisation; returns whether the identity is
/// reachable in at most `depth` moves.
fn reachable_within(w: &BraidWord, rules: &RuleSet, depth: usize) -> bool {
    if w.is_identity() {
        return true;
    }
    depth > 0
        && all_moves(w, rules)
            .into_iter()
            .any(|mv| reachable_within(&apply_move(w, mv, rules).unwrap(), rules, depth - 1))
}

fn replay(w: &BraidWord, path: &[braidq::Move], rules: &RuleSet) -> BraidWord {
    path.iter().fold(w.clone(), |cur, &mv| apply_move(&cur, mv, rules).unwrap())
}

#[test]
fn analytic_deciders_agree_with_search_up_to_length_six() {
    let cases: [(RuleSet, Decider); 2] = [
        (RuleSet::two_strand_inverse(), analytic_trivial_inverse),
        (RuleSet::two_strand_involutive(), analytic_trivial_involutive),
    ];
    for (rules, decide) in cases {
        for n in 1..=6 {
            for w in all_words(rules.alphabet(), n) {
                let found = bfs_untangle(&w, &rules, default_depth(n));
                assert_eq!(decide(&w).unwrap(), found.is_some(), "{rules} disagreement on {w}");
                if let Some(path) = found {
                    assert!(replay(&w, &path, &rules).is_identity());
                }
            }
        }
    }
}

#[test]
fn search_returns_shortest_paths() {
    for rules in [RuleSet::two_strand_inverse(), RuleSet::two_strand_involutive(), RuleSet::three_strand()] {
        let max_n = if rules.strands() == 3 { 4 } else { 5 };
        for n in 2..=max_n {
            for w in all_words(rules.alphabet(), n) {
                let Some(path) = bfs_untangle(&w, &rules, 6) else {
                    assert!(!reachable_within(&w, &rules, 6), "{rules}: missed {w}");
                    continue;
                };
                let k = path.len();
                assert!(reachable_within(&w, &rules, k));
                assert!(k == 0 || !reachable_within(&w, &rules, k - 1), "{rules}: {w} solvable in fewer than {k}");
            }
        }
    }
}

#[test]
fn three_strand_solutions_have_zero_exponent_sum() {
    let rules = RuleSet::three_strand();
    for n in 3..=5 {
        for w in all_words(rules.alphabet(), n) {
            if bfs_untangle(&w, &rules, 8).is_some() {
                assert_eq!(exponent_sum(&w), 0, "{w}");
            }
        }
    }
}

#[test]
fn cancelling_a_braid_relation_needs_the_relation_move() {
    let rules = RuleSet::three_strand();
    let w = braidq::parse_word("ABAbab", &rules).unwrap();
    let path = bfs_untangle(&w, &rules, 12).expect("ABA = BAB, so ABA.bab is trivial");
    assert!(path.iter().any(|mv| mv.kind == braidq::MoveKind::BraidRelation));
    assert!(replay(&w, &path, &rules).is_identity());
}
