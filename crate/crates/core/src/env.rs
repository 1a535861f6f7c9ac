//! Episodic caret environments for the braid games.
//!
//! The agent sits on a caret over the word and observes only the letters in
//! the window starting at the caret. Pair actions rewrite the two letters at
//! `caret, caret + 1`; the braid-relation action rewrites the three letters
//! at `caret..caret + 3`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::braid::{
    applicable_moves, apply_move, BraidWord, Letter, Move, MoveKind, RuleSet, RuleVariant,
};
use crate::error::{BraidError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    MoveCaretLeft,
    MoveCaretRight,
    Rotate,
    Replace,
    ReplaceBack([Letter; 2]),
    RotateReplace,
}

impl Action {
    /// The fixed action set of a rule set, in canonical order.
    pub fn all(rules: &RuleSet) -> Vec<Action> {
        let mut actions = vec![Action::MoveCaretLeft, Action::MoveCaretRight, Action::Rotate, Action::Replace];
        actions.extend(rules.erasable_pairs().iter().map(|&p| Action::ReplaceBack(p)));
        if rules.variant == RuleVariant::ThreeStrand {
            actions.push(Action::RotateReplace);
        }
        actions
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::MoveCaretLeft => f.write_str("move_caret_left"),
            Action::MoveCaretRight => f.write_str("move_caret_right"),
            Action::Rotate => f.write_str("rotate"),
            Action::Replace => f.write_str("replace"),
            Action::ReplaceBack([x, y]) => write!(f, "replace_back:{x}{y}"),
            Action::RotateReplace => f.write_str("rotate_replace"),
        }
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "move_caret_left" => Action::MoveCaretLeft,
            "move_caret_right" => Action::MoveCaretRight,
            "rotate" => Action::Rotate,
            "replace" => Action::Replace,
            "rotate_replace" => Action::RotateReplace,
            other => {
                let pair = other
                    .strip_prefix("replace_back:")
                    .ok_or_else(|| format!("unknown action {other:?}"))?;
                let letters: Vec<Letter> = pair.chars().filter_map(Letter::from_char).collect();
                match letters[..] {
                    [x, y] if pair.chars().count() == 2 => Action::ReplaceBack([x, y]),
                    _ => return Err(format!("bad replace_back target {pair:?}")),
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionOutcome {
    CaretMove,
    RotateTrue,
    RotateFalse,
    ReplaceTrue,
    ReplaceBack,
    ReplaceFalse,
    RotateReplace,
}

impl ActionOutcome {
    /// Whether the outcome leaves the word untouched.
    pub fn is_false(self) -> bool {
        matches!(self, ActionOutcome::RotateFalse | ActionOutcome::ReplaceFalse)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardTable {
    pub caret_move: f64,
    pub rotate_true: f64,
    pub rotate_false: f64,
    pub replace_true: f64,
    pub replace_back: f64,
    pub replace_false: f64,
    pub rotate_replace: f64,
}

impl RewardTable {
    /// Rewards for the untangling agent.
    pub const fn untangle() -> Self {
        RewardTable {
            caret_move: 0.0,
            rotate_true: 0.0,
            rotate_false: 0.0,
            replace_true: 1.0,
            replace_back: -2.0,
            replace_false: -1.0,
            rotate_replace: 1.0,
        }
    }

    /// Rewards for the tangling agent: inserting and erasing swap values.
    pub const fn tangle() -> Self {
        RewardTable {
            caret_move: 0.0,
            rotate_true: 0.0,
            rotate_false: 0.0,
            replace_true: -2.0,
            replace_back: 1.0,
            replace_false: -1.0,
            rotate_replace: 1.0,
        }
    }

    pub fn reward(&self, outcome: ActionOutcome) -> f64 {
        match outcome {
            ActionOutcome::CaretMove => self.caret_move,
            ActionOutcome::RotateTrue => self.rotate_true,
            ActionOutcome::RotateFalse => self.rotate_false,
            ActionOutcome::ReplaceTrue => self.replace_true,
            ActionOutcome::ReplaceBack => self.replace_back,
            ActionOutcome::ReplaceFalse => self.replace_false,
            ActionOutcome::RotateReplace => self.rotate_replace,
        }
    }
}

impl Default for RewardTable {
    fn default() -> Self {
        Self::untangle()
    }
}

/// Outcomes reported for failed actions that have no dedicated reward row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FailureOutcomes {
    pub replace_back: ActionOutcome,
    pub rotate_replace: ActionOutcome,
}

impl Default for FailureOutcomes {
    fn default() -> Self {
        FailureOutcomes {
            replace_back: ActionOutcome::ReplaceFalse,
            rotate_replace: ActionOutcome::RotateFalse,
        }
    }
}

/// The letters under the caret window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observation {
    letters: [Letter; 3],
    width: u8,
}

impl Observation {
    pub fn new(window: &[Letter]) -> Self {
        assert!(matches!(window.len(), 2 | 3), "observation window must be 2 or 3 letters");
        let mut letters = [Letter::Identity; 3];
        letters[..window.len()].copy_from_slice(window);
        Observation { letters, width: window.len() as u8 }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters[..self.width as usize]
    }

    /// All observations a rule set can produce: 9 pairs or 125 triples.
    pub fn all(rules: &RuleSet) -> Vec<Observation> {
        let alphabet = rules.alphabet();
        let mut out = Vec::new();
        let mut idx = vec![0usize; rules.window()];
        loop {
            let window: Vec<Letter> = idx.iter().map(|&i| alphabet[i]).collect();
            out.push(Observation::new(&window));
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < alphabet.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Observation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| format!("bad letter {c:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if !matches!(letters.len(), 2 | 3) {
            return Err(format!("observation {s:?} must have 2 or 3 letters"));
        }
        Ok(Observation::new(&letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Start from a scrambled word; done once every letter is `1`.
    Untangle,
    /// Start from the identity word; done only when the budget runs out.
    Tangle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvConfig {
    pub rules: RuleSet,
    pub n: usize,
    pub steps_budget: usize,
    pub mode: Mode,
    pub scramble_depth: usize,
    pub reward_table: RewardTable,
    pub terminal_bonus: f64,
    pub failures: FailureOutcomes,
}

impl EnvConfig {
    pub fn untangle(rules: RuleSet, n: usize, steps_budget: usize, scramble_depth: usize) -> Self {
        EnvConfig {
            rules,
            n,
            steps_budget,
            mode: Mode::Untangle,
            scramble_depth,
            reward_table: RewardTable::untangle(),
            terminal_bonus: 0.0,
            failures: FailureOutcomes::default(),
        }
    }

    pub fn tangle(rules: RuleSet, n: usize, steps_budget: usize) -> Self {
        EnvConfig {
            rules,
            n,
            steps_budget,
            mode: Mode::Tangle,
            scramble_depth: 0,
            reward_table: RewardTable::tangle(),
            terminal_bonus: 0.0,
            failures: FailureOutcomes::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < self.rules.window() {
            return Err(BraidError::InvalidConfig(format!(
                "word length {} is shorter than the window {}",
                self.n,
                self.rules.window()
            )));
        }
        if self.steps_budget == 0 {
            return Err(BraidError::InvalidConfig("steps budget must be at least 1".into()));
        }
        Ok(())
    }

    pub fn max_caret(&self) -> usize {
        self.n - self.rules.window()
    }

    pub fn actions(&self) -> Vec<Action> {
        Action::all(&self.rules)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnvState {
    pub word: BraidWord,
    pub caret: usize,
    pub steps_taken: usize,
}

impl EnvState {
    pub fn new(word: BraidWord) -> Self {
        EnvState { word, caret: 0, steps_taken: 0 }
    }

    pub fn is_solved(&self) -> bool {
        self.word.is_identity()
    }

    pub fn is_done(&self, config: &EnvConfig) -> bool {
        self.steps_taken >= config.steps_budget || (config.mode == Mode::Untangle && self.is_solved())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub state: EnvState,
    pub reward: f64,
    pub done: bool,
    pub outcome: ActionOutcome,
    /// The rewrite performed, if the word changed.
    pub applied: Option<Move>,
}

pub fn reset<R: Rng + ?Sized>(config: &EnvConfig, rng: &mut R) -> EnvState {
    let word = match config.mode {
        Mode::Tangle => BraidWord::identity(config.n),
        Mode::Untangle => scramble(config.n, config.scramble_depth, &config.rules, rng),
    };
    EnvState::new(word)
}

/// Random walk of `k` moves away from the identity word.
///
/// Moves are drawn uniformly from every (position, move) pair reachable by
/// the caret, so each output can be untangled inside the environment in at
/// most `k` rewrites. The walk stops early if a word with no moves is hit.
pub fn scramble<R: Rng + ?Sized>(n: usize, k: usize, rules: &RuleSet, rng: &mut R) -> BraidWord {
    let mut word = BraidWord::identity(n);
    let Some(max) = n.checked_sub(rules.window()) else {
        return word;
    };
    for _ in 0..k {
        let moves: Vec<Move> = (0..=max)
            .flat_map(|p| applicable_moves(&word, p, rules).expect("position within window"))
            .collect();
        if moves.is_empty() {
            break;
        }
        let mv = moves[rng.gen_range(0..moves.len())];
        word = apply_move(&word, mv, rules).expect("enumerated move applies");
    }
    word
}

pub fn observe(state: &EnvState, rules: &RuleSet) -> Observation {
    let w = rules.window();
    Observation::new(&state.word.letters()[state.caret..state.caret + w])
}

pub fn step(state: &EnvState, action: Action, config: &EnvConfig) -> Result<Transition> {
    if state.is_done(config) {
        return Err(BraidError::EpisodeFinished);
    }
    let rules = &config.rules;
    let mut next = state.clone();
    next.steps_taken += 1;

    let attempt = |kind: MoveKind| {
        let mv = Move::new(kind, state.caret);
        apply_move(&state.word, mv, rules).ok().map(|w| (w, mv))
    };

    let (outcome, rewrite) = match action {
        Action::MoveCaretLeft => {
            next.caret = state.caret.saturating_sub(1);
            (ActionOutcome::CaretMove, None)
        }
        Action::MoveCaretRight => {
            next.caret = (state.caret + 1).min(config.max_caret());
            (ActionOutcome::CaretMove, None)
        }
        Action::Replace => match attempt(MoveKind::ErasePair) {
            Some(r) => (ActionOutcome::ReplaceTrue, Some(r)),
            None => (ActionOutcome::ReplaceFalse, None),
        },
        Action::ReplaceBack(target) => match attempt(MoveKind::InsertPair(target)) {
            Some(r) => (ActionOutcome::ReplaceBack, Some(r)),
            None => (config.failures.replace_back, None),
        },
        Action::Rotate => match attempt(MoveKind::SwapPair) {
            Some(r) => (ActionOutcome::RotateTrue, Some(r)),
            None => (ActionOutcome::RotateFalse, None),
        },
        Action::RotateReplace => match attempt(MoveKind::BraidRelation) {
            Some(r) if rules.variant == RuleVariant::ThreeStrand => (ActionOutcome::RotateReplace, Some(r)),
            _ => (config.failures.rotate_replace, None),
        },
    };

    let applied = rewrite.map(|(word, mv)| {
        next.word = word;
        mv
    });
    let mut reward = config.reward_table.reward(outcome);
    let done = next.is_done(config);
    if config.mode == Mode::Untangle && next.is_solved() {
        reward += config.terminal_bonus;
    }
    Ok(Transition { state: next, reward, done, outcome, applied })
}

/// Gym-style wrapper owning its configuration and current state.
#[derive(Debug, Clone)]
pub struct BraidEnv {
    config: EnvConfig,
    state: EnvState,
}

impl BraidEnv {
    pub fn new(config: EnvConfig) -> Result<Self> {
        config.validate()?;
        let state = EnvState::new(BraidWord::identity(config.n));
        Ok(BraidEnv { config, state })
    }

    pub fn config(&self) -> &EnvConfig {
        &self.config
    }

    pub fn state(&self) -> &EnvState {
        &self.state
    }

    /// Start from a given word instead of the configured reset rule.
    pub fn reset_to(&mut self, word: BraidWord) -> Observation {
        assert_eq!(word.len(), self.config.n, "word length must match the environment");
        self.state = EnvState::new(word);
        self.observe()
    }

    pub fn reset<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Observation {
        self.state = reset(&self.config, rng);
        self.observe()
    }

    pub fn observe(&self) -> Observation {
        observe(&self.state, &self.config.rules)
    }

    pub fn is_done(&self) -> bool {
        self.state.is_done(&self.config)
    }

    pub fn step(&mut self, action: Action) -> Result<Transition> {
        let t = step(&self.state, action, &self.config)?;
        self.state = t.state.clone();
        Ok(t)
    }
}
