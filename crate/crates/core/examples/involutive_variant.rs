//! The `aa = bb = 11` variant: every letter is its own inverse, so `ab` no
//! longer cancels and scrambles look different. Compares both 2-strand rule
//! sets on the same budget.

use braidq::env::scramble;
use braidq::oracle::{analytic_trivial_inverse, analytic_trivial_involutive};
use braidq::{train, EnvConfig, Hyperparams, RuleSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> braidq::Result<()> {
    let n = 6;
    for rules in [RuleSet::two_strand_inverse(), RuleSet::two_strand_involutive()] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let samples: Vec<String> = (0..4).map(|_| scramble(n, 4, &rules, &mut rng).to_string()).collect();
        println!("{rules}: sample scrambles {}", samples.join(" "));

        let config = EnvConfig::untangle(rules, n, 40, 4);
        let out = train(&config, &Hyperparams { episodes: 5000, ..Hyperparams::single_agent() })?;
        let tail = &out.logs[4000..];
        let solved = tail.iter().filter(|l| l.solved).count();
        let steps = tail.iter().map(|l| l.steps_used).sum::<usize>() as f64 / tail.len() as f64;
        println!("{rules}: last 1000 episodes solved {solved}, mean steps {steps:.1}");
    }

    // The two groups disagree on which words are trivial.
    let r = RuleSet::two_strand_inverse();
    for text in ["abab", "abba", "aabb", "aa11"] {
        let w = braidq::parse_word(text, &r)?;
        println!(
            "{text}: trivial with ab=11 {}, with aa=11 {}",
            analytic_trivial_inverse(&w)?,
            analytic_trivial_involutive(&w)?
        );
    }
    Ok(())
}
