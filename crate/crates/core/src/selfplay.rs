//! Tangler versus untangler on 3-strand braids.
//!
//! Each game has two phases. The tangler starts from `11...1` and acts for
//! exactly `steps_budget` steps; the untangler then gets the tangled word with
//! the caret back at 0 and its own `steps_budget` steps to reach `11...1`.
//! The untangler wins if it gets there.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::braid::{BraidWord, Move, RuleSet, RuleVariant};
use crate::env::{observe, step, Action, EnvConfig, EnvState, Observation, RewardTable};
use crate::error::{BraidError, Result};
use crate::qlearn::{select_action, Hyperparams, QTable};

#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    pub rules: RuleSet,
    pub n: usize,
    /// Steps per player per game.
    pub steps_budget: usize,
    pub episodes: usize,
    pub tangler_rewards: RewardTable,
    pub untangler_rewards: RewardTable,
    /// Added to the tangler's last step when the untangler fails.
    pub tangler_win_bonus: f64,
    /// Added to the tangler's last step when the untangler succeeds.
    pub tangler_loss_penalty: f64,
    /// Added to the untangler's last step when it succeeds.
    pub untangler_win_bonus: f64,
    /// Only `alpha`, `gamma` and `epsilon` are read from these.
    pub hp_tangler: Hyperparams,
    pub hp_untangler: Hyperparams,
    pub seed: u64,
}

impl GameConfig {
    pub fn new(n: usize, steps_budget: usize, episodes: usize, seed: u64) -> Self {
        GameConfig {
            rules: RuleSet::three_strand(),
            n,
            steps_budget,
            episodes,
            tangler_rewards: RewardTable::tangle(),
            untangler_rewards: RewardTable::untangle(),
            tangler_win_bonus: 10.0,
            tangler_loss_penalty: -10.0,
            untangler_win_bonus: 10.0,
            hp_tangler: Hyperparams::default(),
            hp_untangler: Hyperparams::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rules.variant != RuleVariant::ThreeStrand {
            return Err(BraidError::InvalidConfig("self-play uses the three-strand rules".into()));
        }
        if self.n < 3 {
            return Err(BraidError::InvalidConfig("self-play needs n >= 3".into()));
        }
        if self.episodes == 0 {
            return Err(BraidError::InvalidConfig("episodes must be at least 1".into()));
        }
        let hp = |h: &Hyperparams| Hyperparams { episodes: 1, ..*h }.validate();
        hp(&self.hp_tangler)?;
        hp(&self.hp_untangler)?;
        self.tangle_env().validate()
    }

    pub fn tangle_env(&self) -> EnvConfig {
        EnvConfig {
            reward_table: self.tangler_rewards,
            ..EnvConfig::tangle(self.rules, self.n, self.steps_budget)
        }
    }

    pub fn untangle_env(&self) -> EnvConfig {
        EnvConfig {
            reward_table: self.untangler_rewards,
            terminal_bonus: self.untangler_win_bonus,
            ..EnvConfig::untangle(self.rules, self.n, self.steps_budget, 0)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameResult {
    pub tangled_word: BraidWord,
    /// Rewrites the tangler performed, in order.
    pub tangler_moves: Vec<Move>,
    pub untangler_won: bool,
    pub tangler_reward: f64,
    pub untangler_reward: f64,
    pub untangler_steps: usize,
    pub final_word: BraidWord,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinStats {
    pub n: usize,
    pub episodes: usize,
    pub steps: usize,
    /// Fraction of untangler wins over the final tenth of training games.
    pub untangler_win_rate: f64,
}

struct Pending {
    obs: Observation,
    action: Action,
    reward: f64,
    next: Observation,
}

/// Play one game. When `learn` is set, both tables receive Q-learning
/// updates from their own phase, and each player's final transition carries
/// the game's terminal reward with no bootstrap.
pub fn play_game<R: Rng + ?Sized>(
    tangler_q: &mut QTable,
    untangler_q: &mut QTable,
    config: &GameConfig,
    rng: &mut R,
    learn: bool,
) -> Result<GameResult> {
    let rules = config.rules;
    let actions = Action::all(&rules);

    let tangle_env = config.tangle_env();
    let hp_t = config.hp_tangler;
    let mut state = EnvState::new(BraidWord::identity(config.n));
    let mut tangler_moves = Vec::new();
    let mut tangler_reward = 0.0;
    let mut pending: Option<Pending> = None;
    while !state.is_done(&tangle_env) {
        let obs = observe(&state, &rules);
        let action = select_action(tangler_q, &obs, &actions, hp_t.epsilon, rng)?;
        let t = step(&state, action, &tangle_env)?;
        tangler_moves.extend(t.applied);
        tangler_reward += t.reward;
        let next = observe(&t.state, &rules);
        if let Some(p) = pending.take() {
            if learn {
                tangler_q.bellman_update(&p.obs, p.action, p.reward, Some(&p.next), &actions, hp_t.alpha, hp_t.gamma);
            }
        }
        pending = Some(Pending { obs, action, reward: t.reward, next });
        state = t.state;
    }
    let tangled_word = state.word;

    let untangle_env = config.untangle_env();
    let hp_u = config.hp_untangler;
    let mut state = EnvState::new(tangled_word.clone());
    let mut untangler_reward = if state.is_solved() { config.untangler_win_bonus } else { 0.0 };
    while !state.is_done(&untangle_env) {
        let obs = observe(&state, &rules);
        let action = select_action(untangler_q, &obs, &actions, hp_u.epsilon, rng)?;
        let t = step(&state, action, &untangle_env)?;
        untangler_reward += t.reward;
        if learn {
            let next_obs = observe(&t.state, &rules);
            let next = (!t.done).then_some(&next_obs);
            untangler_q.bellman_update(&obs, action, t.reward, next, &actions, hp_u.alpha, hp_u.gamma);
        }
        state = t.state;
    }
    let untangler_won = state.is_solved();

    let terminal = if untangler_won { config.tangler_loss_penalty } else { config.tangler_win_bonus };
    tangler_reward += terminal;
    if let (Some(p), true) = (pending, learn) {
        tangler_q.bellman_update(&p.obs, p.action, p.reward + terminal, None, &actions, hp_t.alpha, hp_t.gamma);
    }

    Ok(GameResult {
        tangled_word,
        tangler_moves,
        untangler_won,
        tangler_reward,
        untangler_reward,
        untangler_steps: state.steps_taken,
        final_word: state.word,
    })
}

#[derive(Debug, Clone)]
pub struct SelfPlayOutput {
    pub tangler_q: QTable,
    pub untangler_q: QTable,
    pub games: Vec<GameResult>,
    pub stats: WinStats,
}

/// Untangler win rate over the last tenth of `games` (at least one game).
pub fn final_win_rate(games: &[GameResult]) -> f64 {
    if games.is_empty() {
        return 0.0;
    }
    let tail = games.len().div_ceil(10);
    let wins = games[games.len() - tail..].iter().filter(|g| g.untangler_won).count();
    wins as f64 / tail as f64
}

pub fn train_selfplay(config: &GameConfig) -> Result<SelfPlayOutput> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tangler_q = QTable::with_initial(config.hp_tangler.initial_q);
    let mut untangler_q = QTable::with_initial(config.hp_untangler.initial_q);
    let games = (0..config.episodes)
        .map(|_| play_game(&mut tangler_q, &mut untangler_q, config, &mut rng, true))
        .collect::<Result<Vec<_>>>()?;
    let stats = WinStats {
        n: config.n,
        episodes: config.episodes,
        steps: config.steps_budget,
        untangler_win_rate: final_win_rate(&games),
    };
    Ok(SelfPlayOutput { tangler_q, untangler_q, games, stats })
}

/// One line per game: `episode,winner,tangled_word,untangler_steps`.
pub fn transcript_csv(games: &[GameResult]) -> String {
    let mut out = String::from("episode,winner,tangled_word,untangler_steps\n");
    for (i, g) in games.iter().enumerate() {
        let winner = if g.untangler_won { "untangler" } else { "tangler" };
        writeln!(out, "{i},{winner},{},{}", g.tangled_word, g.untangler_steps).unwrap();
    }
    out
}

/// Win rates for every (length, episodes, steps) cell, averaged over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct WinGrid {
    pub lengths: Vec<usize>,
    /// `(episodes, steps)` column headers, steps-major.
    pub columns: Vec<(usize, usize)>,
    /// Row-major: `cells[row * columns.len() + col]`.
    pub cells: Vec<WinStats>,
    pub seeds: Vec<u64>,
}

impl WinGrid {
    pub fn get(&self, n: usize, episodes: usize, steps: usize) -> Option<&WinStats> {
        self.cells.iter().find(|c| c.n == n && c.episodes == episodes && c.steps == steps)
    }

    /// Text table with one row per length and one column per (episodes, steps).
    pub fn to_table(&self) -> String {
        let mut out = String::from("| Input length |");
        for (ep, st) in &self.columns {
            write!(out, " ep={ep} steps={st} |").unwrap();
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &self.columns {
            out.push_str("---|");
        }
        out.push('\n');
        for (row, n) in self.lengths.iter().enumerate() {
            write!(out, "| {n} |").unwrap();
            for col in 0..self.columns.len() {
                let rate = self.cells[row * self.columns.len() + col].untangler_win_rate;
                write!(out, " {:.1}% |", rate * 100.0).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Train one self-play run per (cell, seed) in parallel, starting each from
/// `base` with its length, episodes, steps and seed overridden.
pub fn winrate_grid(
    base: &GameConfig,
    lengths: &[usize],
    episode_counts: &[usize],
    step_counts: &[usize],
    seeds: &[u64],
) -> Result<WinGrid> {
    winrate_grid_with(base, lengths, episode_counts, step_counts, seeds, |_, _| Ok(()))
}

/// [`winrate_grid`], calling `on_run` with every finished run.
pub fn winrate_grid_with<F>(
    base: &GameConfig,
    lengths: &[usize],
    episode_counts: &[usize],
    step_counts: &[usize],
    seeds: &[u64],
    on_run: F,
) -> Result<WinGrid>
where
    F: Fn(&GameConfig, &SelfPlayOutput) -> Result<()> + Sync,
{
    if lengths.is_empty() || episode_counts.is_empty() || step_counts.is_empty() || seeds.is_empty() {
        return Err(BraidError::InvalidConfig("grid axes must be nonempty".into()));
    }
    let columns: Vec<(usize, usize)> =
        step_counts.iter().flat_map(|&s| episode_counts.iter().map(move |&e| (e, s))).collect();
    let jobs: Vec<GameConfig> = lengths
        .iter()
        .flat_map(|&n| columns.iter().map(move |&(e, s)| (n, e, s)))
        .flat_map(|(n, e, s)| {
            seeds.iter().map(move |&seed| GameConfig { n, episodes: e, steps_budget: s, seed, ..base.clone() })
        })
        .collect();
    let rates = jobs
        .par_iter()
        .map(|cfg| {
            let out = train_selfplay(cfg)?;
            on_run(cfg, &out)?;
            Ok(out.stats.untangler_win_rate)
        })
        .collect::<Result<Vec<f64>>>()?;
    let cells = jobs
        .chunks(seeds.len())
        .zip(rates.chunks(seeds.len()))
        .map(|(cfgs, r)| WinStats {
            n: cfgs[0].n,
            episodes: cfgs[0].episodes,
            steps: cfgs[0].steps_budget,
            untangler_win_rate: r.iter().sum::<f64>() / r.len() as f64,
        })
        .collect();
    Ok(WinGrid { lengths: lengths.to_vec(), columns, cells, seeds: seeds.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{exponent_sum, Letter, MoveKind};
    use crate::env::Mode;

    fn greedy(cfg: &mut GameConfig) {
        cfg.hp_tangler.epsilon = 0.0;
        cfg.hp_untangler.epsilon = 0.0;
    }

    #[test]
    fn idle_tangler_loses_immediately() {
        let mut cfg = GameConfig::new(5, 6, 1, 0);
        greedy(&mut cfg);
        let mut tq: QTable = QTable::new();
        tq.set("111".parse().unwrap(), Action::MoveCaretRight, 1.0);
        let mut uq: QTable = QTable::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = play_game(&mut tq, &mut uq, &cfg, &mut rng, false).unwrap();
        assert!(g.tangled_word.is_identity());
        assert!(g.untangler_won);
        assert_eq!(g.untangler_steps, 0);
        assert_eq!(g.untangler_reward, 10.0);
        assert_eq!(g.tangler_reward, -10.0);
    }

    #[test]
    fn single_insert_is_undone_greedily() {
        let mut cfg = GameConfig::new(5, 3, 1, 0);
        greedy(&mut cfg);
        let aa = Action::ReplaceBack([Letter::SigmaPlus1, Letter::SigmaMinus1]);
        let mut tq: QTable = QTable::new();
        // insert at caret 0, then walk right
        tq.set("111".parse().unwrap(), aa, 1.0);
        for o in ["Aa1", "a11"] {
            tq.set(o.parse().unwrap(), Action::MoveCaretRight, 2.0);
        }
        let mut uq: QTable = QTable::new();
        uq.set("Aa1".parse().unwrap(), Action::Replace, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = play_game(&mut tq, &mut uq, &cfg, &mut rng, false).unwrap();
        assert_eq!(g.tangled_word.to_string(), "Aa111");
        assert_eq!(g.tangler_moves, vec![Move::new(MoveKind::InsertPair([Letter::SigmaPlus1, Letter::SigmaMinus1]), 0)]);
        assert!(g.untangler_won);
        assert!(g.untangler_steps <= 2);
    }

    #[test]
    fn smoke_run_conserves_exponent_sum() {
        let out = train_selfplay(&GameConfig::new(7, 20, 10, 3)).unwrap();
        assert_eq!(out.games.len(), 10);
        for g in &out.games {
            assert_eq!(exponent_sum(&g.tangled_word), 0);
            assert_eq!(g.tangled_word.len(), 7);
            if g.untangler_won {
                assert!(g.final_word.is_identity());
            }
        }
    }

    #[test]
    fn win_rate_uses_last_tenth() {
        let mk = |won| GameResult {
            tangled_word: BraidWord::identity(3),
            tangler_moves: vec![],
            untangler_won: won,
            tangler_reward: 0.0,
            untangler_reward: 0.0,
            untangler_steps: 0,
            final_word: BraidWord::identity(3),
        };
        let mut games: Vec<_> = (0..90).map(|_| mk(false)).collect();
        games.extend((0..10).map(|i| mk(i < 3)));
        assert!((final_win_rate(&games) - 0.3).abs() < 1e-12);
        assert_eq!(final_win_rate(&games[..5]), 0.0);
    }

    #[test]
    fn transcript_format() {
        let out = train_selfplay(&GameConfig::new(4, 3, 2, 1)).unwrap();
        let csv = transcript_csv(&out.games);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "episode,winner,tangled_word,untangler_steps");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn degenerate_grid_matches_direct_run() {
        let base = GameConfig::new(7, 20, 200, 0);
        let grid = winrate_grid(&base, &[7], &[200], &[20], &[5]).unwrap();
        let direct = train_selfplay(&GameConfig { seed: 5, ..base }).unwrap();
        assert_eq!(grid.cells, vec![direct.stats]);
    }

    #[test]
    fn grid_table_layout() {
        let base = GameConfig::new(3, 2, 10, 0);
        let grid = winrate_grid(&base, &[3, 4], &[10, 20], &[2, 3], &[1]).unwrap();
        assert_eq!(grid.columns, vec![(10, 2), (20, 2), (10, 3), (20, 3)]);
        let table = grid.to_table();
        assert_eq!(table.lines().count(), 4);
        assert!(table.starts_with("| Input length | ep=10 steps=2 | ep=20 steps=2 |"));
        assert!(grid.get(4, 20, 3).is_some());
    }

    #[test]
    fn rejects_two_strand_rules() {
        let cfg = GameConfig { rules: RuleSet::two_strand_inverse(), ..GameConfig::new(5, 5, 5, 0) };
        assert!(cfg.validate().is_err());
        assert!(GameConfig::new(2, 5, 5, 0).validate().is_err());
        assert!(matches!(train_selfplay(&GameConfig::new(5, 5, 0, 0)), Err(BraidError::InvalidConfig(_))));
    }

    #[test]
    fn fixed_seed_same_transcript() {
        let cfg = GameConfig::new(6, 10, 50, 9);
        let a = train_selfplay(&cfg).unwrap();
        let b = train_selfplay(&cfg).unwrap();
        assert_eq!(a.games, b.games);
        assert_eq!(a.tangler_q, b.tangler_q);
    }

    #[test]
    fn modes_of_phase_envs() {
        let cfg = GameConfig::new(5, 5, 5, 0);
        assert_eq!(cfg.tangle_env().mode, Mode::Tangle);
        assert_eq!(cfg.untangle_env().mode, Mode::Untangle);
        assert_eq!(cfg.untangle_env().terminal_bonus, 10.0);
    }
}
