//! How many words of each length can be untangled without changing length,
//! and how far away they are. Uses breadth-first search for all three rule
//! sets and cross-checks the 2-strand counts against the closed forms.

use std::collections::BTreeMap;

use braidq::oracle::{analytic_trivial_inverse, analytic_trivial_involutive, bfs_untangle, default_depth};
use braidq::{BraidWord, RuleSet, RuleVariant};

fn words(rules: &RuleSet, n: usize) -> Vec<BraidWord> {
    let alphabet = rules.alphabet();
    let k = alphabet.len();
    (0..k.pow(n as u32))
        .map(|mut c| {
            BraidWord::new(
                (0..n)
                    .map(|_| {
                        let l = alphabet[c % k];
                        c /= k;
                        l
                    })
                    .collect(),
            )
        })
        .collect()
}

fn main() {
    for rules in [RuleSet::two_strand_inverse(), RuleSet::two_strand_involutive(), RuleSet::three_strand()] {
        let max_n = if rules.strands() == 2 { 6 } else { 5 };
        for n in 2..=max_n {
            let mut by_distance = BTreeMap::new();
            let mut trivial = 0;
            let all = words(&rules, n);
            for w in &all {
                if let Some(path) = bfs_untangle(w, &rules, default_depth(n)) {
                    *by_distance.entry(path.len()).or_insert(0) += 1;
                    trivial += 1;
                }
            }
            let decide: Option<fn(&BraidWord) -> braidq::Result<bool>> = match rules.variant {
                RuleVariant::TwoStrandInverse => Some(analytic_trivial_inverse),
                RuleVariant::TwoStrandInvolutive => Some(analytic_trivial_involutive),
                RuleVariant::ThreeStrand => None,
            };
            let analytic = decide.map(|f| all.iter().filter(|w| f(w).unwrap()).count());
            let check = analytic.map_or(String::new(), |a| format!(" (closed form {a})"));
            println!("{rules} n={n}: {trivial}/{} untanglable{check}, by distance {by_distance:?}", all.len());
        }
    }
}
