//! Tabular Q-learning agents that tangle and untangle braid words on two and
//! three strands.
//!
//! - [`braid`]: words over `A a B b 1` and the length-preserving moves.
//! - [`env`]: caret environments with reset / step / observe.
//! - [`qlearn`]: Q-tables, epsilon-greedy selection, the training loop.
//! - [`selfplay`]: the tangler versus untangler game and win-rate grids.
//! - [`oracle`]: breadth-first search and closed-form triviality checks.
//! - [`render`]: SVG strand diagrams.
//! - [`cli`]: the `braidq` command line.

pub mod braid;
pub mod cli;
pub mod env;
pub mod error;
pub mod oracle;
pub mod qlearn;
pub mod render;
pub mod selfplay;

pub use braid::{
    all_moves, applicable_moves, apply_move, exponent_sum, parse_word, AbelianImage, BraidWord, Letter, Move,
    MoveKind, RuleSet, RuleVariant,
};
pub use env::{Action, ActionOutcome, BraidEnv, EnvConfig, EnvState, Mode, Observation, RewardTable};
pub use error::{BraidError, Result};
pub use qlearn::{select_action, train, EpisodeLog, Hyperparams, QTable};
pub use selfplay::{play_game, train_selfplay, winrate_grid, GameConfig, GameResult, WinStats};
