//! Untangler win rates by word length and training length, averaged over
//! seeds and printed as a markdown table. Cells run in parallel.
//!
//!     cargo run --release --example winrate_table

use braidq::{winrate_grid, GameConfig};

fn main() -> braidq::Result<()> {
    let lengths = [7, 8, 9, 10, 11];
    let seeds = [0, 1, 2];
    let grid = winrate_grid(&GameConfig::new(7, 20, 1000, 0), &lengths, &[1000, 10_000], &[20], &seeds)?;
    print!("{}", grid.to_table());
    Ok(())
}
