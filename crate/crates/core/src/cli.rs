//! `braidq` command line: training runs, self-play grids, oracle queries and
//! rendering.
//!
//! Every flag may also come from a `--config` file of `key=value` lines,
//! where the key is the long flag name without dashes (`scramble-depth=4`).
//! Flags on the command line win over the file.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::braid::{parse_word, RuleSet};
use crate::env::EnvConfig;
use crate::oracle::{bfs_untangle, default_depth};
use crate::qlearn::{train, Hyperparams};
use crate::render::render_svg;
use crate::selfplay::{winrate_grid_with, GameConfig};

/// Defaults for the 2-strand training command.
pub const DEFAULT_N: usize = 7;
pub const DEFAULT_EPISODES: usize = 10_000;
pub const DEFAULT_STEPS: usize = 50;
pub const DEFAULT_SCRAMBLE_DEPTH: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "braidq", version, about = "Q-learning agents that tangle and untangle braid words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a single untangling agent on 2-strand words.
    Train2(Train2Args),
    /// Train tangler and untangler against each other on 3-strand braids.
    Selfplay(SelfplayArgs),
    /// Search for a shortest untangling sequence.
    Oracle(OracleArgs),
    /// Draw a braid word as an SVG strand diagram.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct Train2Args {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    episodes: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    /// `inverse` (ab=ba=11) or `involutive` (aa=bb=11).
    #[arg(long)]
    ruleset: Option<String>,
    #[arg(long)]
    scramble_depth: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    terminal_bonus: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Episode metrics CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the learned Q-table as TSV.
    #[arg(long)]
    qtable: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelfplayArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Word lengths, comma separated.
    #[arg(long)]
    n: Option<String>,
    /// Episode counts, comma separated.
    #[arg(long)]
    episodes: Option<String>,
    /// Step budgets, comma separated.
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    word: Option<String>,
    /// `three` (default), `inverse` or `involutive`.
    #[arg(long)]
    ruleset: Option<String>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Enable `aba <-> bab` for three strands.
    #[arg(long)]
    lowercase_braid: bool,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    ruleset: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn runtime<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Runtime(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Train2(a) => cmd_train2(a, stdout),
        Command::Selfplay(a) => cmd_selfplay(a, stdout),
        Command::Oracle(a) => cmd_oracle(a, stdout),
        Command::Render(a) => cmd_render(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

/// `key=value` lines; blank lines and `#` comments are skipped.
fn load_config(path: Option<&Path>) -> CliResult<HashMap<String, String>> {
    let Some(path) = path else {
        return Ok(HashMap::new());
    };
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

struct Settings {
    file: HashMap<String, String>,
}

impl Settings {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| v.parse::<T>().map_err(|_| usage(format!("invalid value {v:?} for {key} in config"))))
            .transpose()
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.get(flag, key)?.ok_or_else(|| usage(format!("missing required --{key}")))
    }
}

fn parse_ruleset(name: &str) -> CliResult<RuleSet> {
    match name {
        "inverse" => Ok(RuleSet::two_strand_inverse()),
        "involutive" => Ok(RuleSet::two_strand_involutive()),
        "three" => Ok(RuleSet::three_strand()),
        other => Err(usage(format!("unknown ruleset {other:?} (expected inverse, involutive or three)"))),
    }
}

fn parse_list<T: FromStr>(text: &str, key: &str) -> CliResult<Vec<T>> {
    let items = text
        .split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| usage(format!("invalid entry {s:?} in --{key}"))))
        .collect::<CliResult<Vec<T>>>()?;
    if items.is_empty() {
        return Err(usage(format!("--{key} needs at least one value")));
    }
    Ok(items)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(runtime)?;
    }
    fs::write(path, contents).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))
}

fn cmd_train2(a: Train2Args, stdout: &mut dyn Write) -> CliResult<()> {
    let s = Settings { file: load_config(a.config.as_deref())? };
    let ruleset = s.or(a.ruleset, "ruleset", "inverse".to_string())?;
    let rules = match ruleset.as_str() {
        "inverse" | "involutive" => parse_ruleset(&ruleset)?,
        other => return Err(usage(format!("train2 needs a 2-strand ruleset, got {other:?}"))),
    };
    let defaults = Hyperparams::single_agent();
    let hp = Hyperparams {
        alpha: s.or(a.alpha, "alpha", defaults.alpha)?,
        gamma: s.or(a.gamma, "gamma", defaults.gamma)?,
        epsilon: s.or(a.epsilon, "epsilon", defaults.epsilon)?,
        episodes: s.or(a.episodes, "episodes", DEFAULT_EPISODES)?,
        seed: s.or(a.seed, "seed", 0)?,
        initial_q: 0.0,
    };
    let mut env = EnvConfig::untangle(
        rules,
        s.or(a.n, "n", DEFAULT_N)?,
        s.or(a.steps, "steps", DEFAULT_STEPS)?,
        s.or(a.scramble_depth, "scramble-depth", DEFAULT_SCRAMBLE_DEPTH)?,
    );
    env.terminal_bonus = s.or(a.terminal_bonus, "terminal-bonus", 0.0)?;
    env.validate().map_err(usage)?;
    hp.validate().map_err(usage)?;
    let out = s.or(a.out, "out", PathBuf::from("train2.csv"))?;
    let qtable = s.get(a.qtable, "qtable")?;

    let result = train(&env, &hp).map_err(runtime)?;
    write_file(&out, &episode_csv(&result.logs))?;
    if let Some(path) = qtable {
        write_file(&path, &result.q.to_tsv())?;
    }
    let tail = result.logs.len().min(1000);
    let mean = result.logs[result.logs.len() - tail..].iter().map(|l| l.total_reward).sum::<f64>() / tail as f64;
    let solved = result.logs[result.logs.len() - tail..].iter().filter(|l| l.solved).count();
    writeln!(
        stdout,
        "{} episodes on {} n={}: last {tail} mean reward {mean:.3}, solved {solved}/{tail}; wrote {}",
        hp.episodes,
        rules,
        env.n,
        out.display()
    )
    .map_err(runtime)?;
    Ok(())
}

/// `episode,reward,steps_used,solved` rows.
pub fn episode_csv(logs: &[crate::qlearn::EpisodeLog]) -> String {
    let mut csv = String::from("episode,reward,steps_used,solved\n");
    for l in logs {
        writeln!(csv, "{},{},{},{}", l.episode, l.total_reward, l.steps_used, l.solved).unwrap();
    }
    csv
}

fn cmd_selfplay(a: SelfplayArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let s = Settings { file: load_config(a.config.as_deref())? };
    let lengths: Vec<usize> = parse_list(&s.or(a.n, "n", "7".to_string())?, "n")?;
    let episodes: Vec<usize> = parse_list(&s.or(a.episodes, "episodes", "1000".to_string())?, "episodes")?;
    let steps: Vec<usize> = parse_list(&s.or(a.steps, "steps", "20".to_string())?, "steps")?;
    let seeds: Vec<u64> = parse_list(&s.or(a.seeds, "seeds", "0".to_string())?, "seeds")?;
    let out_dir = s.or(a.out_dir, "out-dir", PathBuf::from("selfplay_out"))?;

    let mut base = GameConfig::new(lengths[0], steps[0], episodes[0], seeds[0]);
    let d = Hyperparams::default();
    let hp = Hyperparams {
        alpha: s.or(a.alpha, "alpha", d.alpha)?,
        gamma: s.or(a.gamma, "gamma", d.gamma)?,
        epsilon: s.or(a.epsilon, "epsilon", d.epsilon)?,
        ..d
    };
    base.hp_tangler = hp;
    base.hp_untangler = hp;
    for &n in &lengths {
        for &e in &episodes {
            for &st in &steps {
                GameConfig { n, episodes: e, steps_budget: st, ..base.clone() }.validate().map_err(usage)?;
            }
        }
    }
    fs::create_dir_all(&out_dir).map_err(runtime)?;

    let grid = winrate_grid_with(&base, &lengths, &episodes, &steps, &seeds, |cfg, output| {
        let name = format!("transcript_n{}_ep{}_steps{}_seed{}.csv", cfg.n, cfg.episodes, cfg.steps_budget, cfg.seed);
        fs::write(out_dir.join(name), crate::selfplay::transcript_csv(&output.games))
            .map_err(|e| crate::error::BraidError::InvalidConfig(format!("cannot write transcript: {e}")))
    })
    .map_err(runtime)?;

    let seed_text = seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";");
    let mut summary = String::from("n,episodes,steps,seeds,untangler_win_rate\n");
    for c in &grid.cells {
        writeln!(summary, "{},{},{},{seed_text},{}", c.n, c.episodes, c.steps, c.untangler_win_rate).unwrap();
    }
    write_file(&out_dir.join("summary.csv"), &summary)?;
    let table = grid.to_table();
    write_file(&out_dir.join("table.md"), &table)?;
    write!(stdout, "{table}").map_err(runtime)?;
    Ok(())
}

fn cmd_oracle(a: OracleArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let s = Settings { file: load_config(a.config.as_deref())? };
    let rules = parse_ruleset(&s.or(a.ruleset, "ruleset", "three".to_string())?)?
        .with_lowercase_braid_relation(a.lowercase_braid);
    let text: String = s.required(a.word, "word")?;
    let word = parse_word(&text, &rules).map_err(usage)?;
    let depth = s.or(a.max_depth, "max-depth", default_depth(word.len()))?;
    let line = match bfs_untangle(&word, &rules, depth) {
        Some(path) => {
            let mut line = format!("UNTANGLABLE {}", path.len());
            for mv in &path {
                write!(line, " {mv}").unwrap();
            }
            line
        }
        None => format!("NOT-FOUND within {depth}"),
    };
    writeln!(stdout, "{line}").map_err(runtime)?;
    Ok(())
}

fn cmd_render(a: RenderArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let s = Settings { file: load_config(a.config.as_deref())? };
    let rules = parse_ruleset(&s.or(a.ruleset, "ruleset", "three".to_string())?)?;
    let text: String = s.required(a.word, "word")?;
    let word = parse_word(&text, &rules).map_err(usage)?;
    let out = s.or(a.out, "out", PathBuf::from(format!("{text}.svg")))?;
    let svg = render_svg(&word, &rules).map_err(usage)?;
    write_file(&out, &svg)?;
    writeln!(stdout, "wrote {}", out.display()).map_err(runtime)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("braidq").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn oracle_verdicts() {
        assert_eq!(run_cli(&["oracle", "--word", "Aa11"]), (0, "UNTANGLABLE 1 erase@0\n".into()));
        assert_eq!(run_cli(&["oracle", "--word", "1111"]), (0, "UNTANGLABLE 0\n".into()));
        let (code, out) = run_cli(&["oracle", "--word", "abab", "--ruleset", "involutive"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("NOT-FOUND within 8"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_cli(&["oracle", "--word", "Ax"]).0, 2);
        assert_eq!(run_cli(&["oracle"]).0, 2);
        assert_eq!(run_cli(&["oracle", "--word", "ab", "--ruleset", "four"]).0, 2);
        assert_eq!(run_cli(&["train2", "--alpha", "2"]).0, 2);
        assert_eq!(run_cli(&["train2", "--ruleset", "three"]).0, 2);
        assert_eq!(run_cli(&["train2", "--n", "x"]).0, 2);
        assert_eq!(run_cli(&["selfplay", "--n", "2"]).0, 2);
        assert_eq!(run_cli(&["bogus"]).0, 2);
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        fs::write(&cfg, "# oracle settings\nword=Aa11\nmax_depth=0\n").unwrap();
        let cfg = cfg.to_str().unwrap();
        assert_eq!(run_cli(&["oracle", "--config", cfg]), (0, "NOT-FOUND within 0\n".into()));
        assert_eq!(run_cli(&["oracle", "--config", cfg, "--max-depth", "3"]), (0, "UNTANGLABLE 1 erase@0\n".into()));
    }

    #[test]
    fn train2_single_solved_episode() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("m.csv");
        let (code, _) = run_cli(&[
            "train2",
            "--episodes",
            "1",
            "--scramble-depth",
            "0",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(fs::read_to_string(out).unwrap(), "episode,reward,steps_used,solved\n0,0,0,true\n");
    }
}
