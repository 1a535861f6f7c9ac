//! Train tangler and untangler against each other on 3-strand braids, then
//! play a few greedy games and show what each side did.

use braidq::selfplay::transcript_csv;
use braidq::{play_game, train_selfplay, GameConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> braidq::Result<()> {
    let mut config = GameConfig::new(8, 20, 10_000, 3);
    let mut out = train_selfplay(&config)?;
    println!("untangler win rate over the last 1000 games: {:.1}%", out.stats.untangler_win_rate * 100.0);
    let transcript = transcript_csv(&out.games);
    let lines: Vec<&str> = transcript.lines().collect();
    println!("{}", lines[0]);
    for line in &lines[lines.len() - 5..] {
        println!("{line}");
    }

    // greedy play, no learning
    config.hp_tangler.epsilon = 0.0;
    config.hp_untangler.epsilon = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..3 {
        let g = play_game(&mut out.tangler_q, &mut out.untangler_q, &config, &mut rng, false)?;
        let moves: Vec<String> = g.tangler_moves.iter().map(|m| m.to_string()).collect();
        println!(
            "tangler: {} -> {}; untangler {} in {} steps (ends at {})",
            moves.join(" "),
            g.tangled_word,
            if g.untangler_won { "wins" } else { "loses" },
            g.untangler_steps,
            g.final_word
        );
    }
    Ok(())
}
