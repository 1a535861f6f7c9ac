//! Train the 2-strand untangler and print the reward curve in 1000-episode
//! blocks, then watch the greedy policy on a fresh scramble.
//!
//!     cargo run --release --example untangle_two_strand -- [n] [seed]

use braidq::cli::{DEFAULT_SCRAMBLE_DEPTH, DEFAULT_STEPS};
use braidq::env::scramble;
use braidq::qlearn::greedy_rollout;
use braidq::{train, EnvConfig, Hyperparams, RuleSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> braidq::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);

    let rules = RuleSet::two_strand_inverse();
    let config = EnvConfig::untangle(rules, n, DEFAULT_STEPS, DEFAULT_SCRAMBLE_DEPTH);
    let hp = Hyperparams { episodes: 10_000, seed, ..Hyperparams::single_agent() };
    let out = train(&config, &hp)?;

    println!("episodes      mean reward  solved");
    for (i, block) in out.logs.chunks(1000).enumerate() {
        let reward = block.iter().map(|l| l.total_reward).sum::<f64>() / block.len() as f64;
        let solved = block.iter().filter(|l| l.solved).count();
        println!("{:>5}-{:<5}  {reward:>11.3}  {solved:>4}/{}", i * 1000, (i + 1) * 1000 - 1, block.len());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
    for _ in 0..5 {
        let word = scramble(n, DEFAULT_SCRAMBLE_DEPTH, &rules, &mut rng);
        let log = greedy_rollout(&out.q, &config, word.clone())?;
        println!("greedy on {word}: solved={} in {} steps", log.solved, log.steps_used);
    }
    Ok(())
}
