//! Write SVG diagrams for a few braids into a directory (default `diagrams`).

use std::fs;
use std::path::PathBuf;

use braidq::render::render_svg;
use braidq::{parse_word, RuleSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "diagrams".into()));
    fs::create_dir_all(&dir)?;
    let three = RuleSet::three_strand();
    let two = RuleSet::two_strand_inverse();
    for (word, rules) in [("aabaBBAB", three), ("baBABaBb", three), ("11111111", three), ("ABAbab", three), ("a1bab1", two)] {
        let svg = render_svg(&parse_word(word, &rules)?, &rules)?;
        let path = dir.join(format!("{word}.svg"));
        fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
