//! Tabular Q-learning with epsilon-greedy exploration.

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::env::{observe, reset, step, Action, EnvConfig, Mode, Observation};
use crate::error::{BraidError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    /// Learning rate, in `(0, 1]`.
    pub alpha: f64,
    /// Discount factor, in `[0, 1)`.
    pub gamma: f64,
    /// Exploration probability, constant over training.
    pub epsilon: f64,
    pub episodes: usize,
    pub seed: u64,
    /// Value read for pairs the table has never stored.
    pub initial_q: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams { alpha: 0.1, gamma: 0.9, epsilon: 0.1, episodes: 1000, seed: 0, initial_q: 0.0 }
    }
}

/// Learning rate used by default for single-agent untangling. With the
/// window-only observation the greedy policy keeps flipping between aliased
/// states at `alpha = 0.1`; a smaller step averages over them.
pub const SINGLE_AGENT_ALPHA: f64 = 0.02;

impl Hyperparams {
    /// Defaults for single-agent training: [`Hyperparams::default`] with
    /// [`SINGLE_AGENT_ALPHA`].
    pub fn single_agent() -> Self {
        Hyperparams { alpha: SINGLE_AGENT_ALPHA, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(BraidError::InvalidConfig(msg.into()));
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad("alpha must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return bad("gamma must lie in [0, 1)");
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return bad("epsilon must lie in [0, 1]");
        }
        if self.episodes == 0 {
            return bad("episodes must be at least 1");
        }
        if !self.initial_q.is_finite() {
            return bad("initial q must be finite");
        }
        Ok(())
    }
}

/// Sparse Q-matrix; unseen pairs read as `initial`.
#[derive(Debug, Clone)]
pub struct QTable<S = Observation, A = Action> {
    values: HashMap<(S, A), f64>,
    initial: f64,
}

impl<S: Hash + Eq, A: Hash + Eq> PartialEq for QTable<S, A> {
    fn eq(&self, other: &Self) -> bool {
        self.initial == other.initial && self.values == other.values
    }
}

impl<S, A> Default for QTable<S, A> {
    fn default() -> Self {
        QTable { values: HashMap::new(), initial: 0.0 }
    }
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> QTable<S, A> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_initial(initial: f64) -> Self {
        QTable { values: HashMap::new(), initial }
    }

    pub fn get(&self, s: &S, a: A) -> f64 {
        self.values.get(&(s.clone(), a)).copied().unwrap_or(self.initial)
    }

    pub fn set(&mut self, s: S, a: A, value: f64) {
        self.values.insert((s, a), value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&S, &A, f64)> {
        self.values.iter().map(|((s, a), v)| (s, a, *v))
    }

    pub fn max_value(&self, s: &S, actions: &[A]) -> f64 {
        actions.iter().map(|&a| self.get(s, a)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Highest-valued action; ties go to the earliest in `actions`.
    pub fn greedy(&self, s: &S, actions: &[A]) -> Option<A> {
        let mut best: Option<(A, f64)> = None;
        for &a in actions {
            let v = self.get(s, a);
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((a, v));
            }
        }
        best.map(|(a, _)| a)
    }

    /// One Q-learning backup of `(s, a)`. `next` is `None` for a terminal
    /// transition, which drops the bootstrap term. Returns the new value.
    #[allow(clippy::too_many_arguments)]
    pub fn bellman_update(
        &mut self,
        s: &S,
        a: A,
        reward: f64,
        next: Option<&S>,
        actions: &[A],
        alpha: f64,
        gamma: f64,
    ) -> f64 {
        let future = match next {
            Some(sn) if !actions.is_empty() => self.max_value(sn, actions),
            _ => 0.0,
        };
        let old = self.get(s, a);
        let new = old + alpha * (reward + gamma * future - old);
        self.set(s.clone(), a, new);
        new
    }
}

impl<S: Display, A: Display> QTable<S, A> {
    /// Rows `observation<TAB>action<TAB>value`, sorted.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<String> = self.values.iter().map(|((s, a), v)| format!("{s}\t{a}\t{v}")).collect();
        rows.sort();
        let mut out = rows.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

impl<S, A> QTable<S, A>
where
    S: FromStr + Hash + Eq + Clone,
    A: FromStr + Hash + Eq + Copy,
{
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut q = QTable::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
            let err = |reason: &str| BraidError::QTableFormat { line: i + 1, reason: reason.into() };
            let mut cols = line.split('\t');
            let (Some(s), Some(a), Some(v), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(err("expected three tab-separated columns"));
            };
            let s = s.parse().map_err(|_| err("bad observation"))?;
            let a = a.parse().map_err(|_| err("bad action"))?;
            let v: f64 = v.parse().map_err(|_| err("bad value"))?;
            q.set(s, a, v);
        }
        Ok(q)
    }
}

/// Epsilon-greedy choice over `actions`.
pub fn select_action<S, A, R>(q: &QTable<S, A>, s: &S, actions: &[A], epsilon: f64, rng: &mut R) -> Result<A>
where
    S: Hash + Eq + Clone,
    A: Hash + Eq + Copy,
    R: Rng + ?Sized,
{
    if actions.is_empty() {
        return Err(BraidError::EmptyActionSet);
    }
    if epsilon > 0.0 && rng.gen::<f64>() < epsilon {
        return Ok(actions[rng.gen_range(0..actions.len())]);
    }
    Ok(q.greedy(s, actions).expect("nonempty action set"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeLog {
    pub episode: usize,
    pub total_reward: f64,
    pub steps_used: usize,
    pub solved: bool,
}

#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub q: QTable,
    pub logs: Vec<EpisodeLog>,
}

/// Run `hp.episodes` episodes of epsilon-greedy Q-learning on one environment.
///
/// An episode ending because the word is solved is terminal; running out of
/// steps is a time limit and still bootstraps from the last observation.
pub fn train(config: &EnvConfig, hp: &Hyperparams) -> Result<TrainOutput> {
    config.validate()?;
    hp.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(hp.seed);
    let actions = config.actions();
    let mut q = QTable::with_initial(hp.initial_q);
    let mut logs = Vec::with_capacity(hp.episodes);

    for episode in 0..hp.episodes {
        let mut state = reset(config, &mut rng);
        let mut total_reward = 0.0;
        if config.mode == Mode::Untangle && state.is_solved() {
            total_reward += config.terminal_bonus;
        }
        while !state.is_done(config) {
            let obs = observe(&state, &config.rules);
            let action = select_action(&q, &obs, &actions, hp.epsilon, &mut rng)?;
            let t = step(&state, action, config)?;
            let next_obs = observe(&t.state, &config.rules);
            let terminal = config.mode == Mode::Untangle && t.state.is_solved();
            let next = (!terminal).then_some(&next_obs);
            q.bellman_update(&obs, action, t.reward, next, &actions, hp.alpha, hp.gamma);
            total_reward += t.reward;
            state = t.state;
        }
        logs.push(EpisodeLog {
            episode,
            total_reward,
            steps_used: state.steps_taken,
            solved: state.is_solved(),
        });
    }
    Ok(TrainOutput { q, logs })
}

/// Play one episode greedily from `start` without learning.
pub fn greedy_rollout(q: &QTable, config: &EnvConfig, start: crate::braid::BraidWord) -> Result<EpisodeLog> {
    let actions = config.actions();
    let mut state = crate::env::EnvState::new(start);
    let mut total_reward = 0.0;
    while !state.is_done(config) {
        let obs = observe(&state, &config.rules);
        let action = q.greedy(&obs, &actions).ok_or(BraidError::EmptyActionSet)?;
        let t = step(&state, action, config)?;
        total_reward += t.reward;
        state = t.state;
    }
    Ok(EpisodeLog { episode: 0, total_reward, steps_used: state.steps_taken, solved: state.is_solved() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::RuleSet;

    fn obs(s: &str) -> Observation {
        s.parse().unwrap()
    }

    const ACTIONS: [Action; 3] = [Action::MoveCaretLeft, Action::Rotate, Action::Replace];

    #[test]
    fn update_from_zero() {
        let mut q: QTable = QTable::new();
        let v = q.bellman_update(&obs("ab"), Action::Replace, 1.0, Some(&obs("11")), &ACTIONS, 0.1, 0.9);
        assert!((v - 0.1).abs() < 1e-15);
    }

    #[test]
    fn update_full_overwrite_when_myopic() {
        let mut q: QTable = QTable::new();
        q.set(obs("ab"), Action::Replace, -7.25);
        q.set(obs("11"), Action::Rotate, 100.0);
        let v = q.bellman_update(&obs("ab"), Action::Replace, 5.0, Some(&obs("11")), &ACTIONS, 1.0, 0.0);
        assert_eq!(v, 5.0);
    }

    #[test]
    fn update_arithmetic() {
        let mut q: QTable = QTable::new();
        q.set(obs("ab"), Action::Replace, 2.0);
        q.set(obs("11"), Action::Rotate, 3.0);
        let v = q.bellman_update(&obs("ab"), Action::Replace, 0.0, Some(&obs("11")), &ACTIONS, 0.5, 0.5);
        assert!((v - 1.75).abs() < 1e-15);
    }

    #[test]
    fn update_touches_one_entry() {
        let mut q: QTable = QTable::new();
        q.set(obs("11"), Action::Rotate, 3.0);
        q.set(obs("a1"), Action::MoveCaretLeft, -1.0);
        let before = q.clone();
        q.bellman_update(&obs("ab"), Action::Replace, 1.0, Some(&obs("11")), &ACTIONS, 0.3, 0.9);
        assert_eq!(q.len(), before.len() + 1);
        for (s, a, v) in before.entries() {
            assert_eq!(q.get(s, *a), v);
        }
    }

    #[test]
    fn terminal_update_ignores_future() {
        let mut q: QTable = QTable::new();
        q.set(obs("11"), Action::Rotate, 50.0);
        let v = q.bellman_update(&obs("ab"), Action::Replace, 1.0, None, &ACTIONS, 1.0, 0.9);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn unseen_reads_initial() {
        let q: QTable = QTable::new();
        assert_eq!(q.get(&obs("ab"), Action::Replace), 0.0);
        let q: QTable = QTable::with_initial(2.5);
        assert_eq!(q.get(&obs("ab"), Action::Replace), 2.5);
    }

    #[test]
    fn greedy_and_tie_break() {
        let actions = Action::all(&RuleSet::two_strand_inverse());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut q: QTable = QTable::new();
        assert_eq!(select_action(&q, &obs("ab"), &actions, 0.0, &mut rng).unwrap(), Action::MoveCaretLeft);
        q.set(obs("ab"), Action::Replace, 1.0);
        assert_eq!(select_action(&q, &obs("ab"), &actions, 0.0, &mut rng).unwrap(), Action::Replace);
        let empty: [Action; 0] = [];
        assert_eq!(select_action(&q, &obs("ab"), &empty, 0.0, &mut rng), Err(BraidError::EmptyActionSet));
    }

    #[test]
    fn full_exploration_is_uniform() {
        let actions = Action::all(&RuleSet::two_strand_inverse());
        let mut q: QTable = QTable::new();
        q.set(obs("ab"), Action::Replace, 10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let draws = 10_000;
        let mut counts = vec![0usize; actions.len()];
        for _ in 0..draws {
            let a = select_action(&q, &obs("ab"), &actions, 1.0, &mut rng).unwrap();
            counts[actions.iter().position(|&x| x == a).unwrap()] += 1;
        }
        let expected = draws as f64 / actions.len() as f64;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 5 degrees of freedom, p = 0.001 critical value
        assert!(chi2 < 20.52, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn tsv_rows_are_sorted() {
        let mut q: QTable = QTable::new();
        q.set(obs("ba"), Action::Replace, 0.5);
        q.set(obs("ab"), Action::Rotate, -1.0);
        q.set(obs("ab"), Action::ReplaceBack([crate::braid::Letter::SigmaMinus1, crate::braid::Letter::SigmaMinus2]), 0.1);
        assert_eq!(q.to_tsv(), "ab\treplace_back:ab\t0.1\nab\trotate\t-1\nba\treplace\t0.5\n");
        let back: QTable = QTable::from_tsv(&q.to_tsv()).unwrap();
        assert_eq!(back, q);
        assert!(QTable::<Observation, Action>::from_tsv("ab\trotate").is_err());
    }

    #[test]
    fn hyperparam_ranges() {
        let ok = Hyperparams::default();
        assert!(ok.validate().is_ok());
        assert!(Hyperparams { alpha: 0.0, ..ok }.validate().is_err());
        assert!(Hyperparams { gamma: 1.0, ..ok }.validate().is_err());
        assert!(Hyperparams { epsilon: 1.5, ..ok }.validate().is_err());
        assert!(Hyperparams { episodes: 0, ..ok }.validate().is_err());
    }

    #[test]
    fn solved_start_logs_terminal_bonus() {
        let mut cfg = EnvConfig::untangle(RuleSet::two_strand_inverse(), 4, 10, 0);
        cfg.terminal_bonus = 3.0;
        let out = train(&cfg, &Hyperparams { episodes: 1, ..Default::default() }).unwrap();
        assert_eq!(out.logs, vec![EpisodeLog { episode: 0, total_reward: 3.0, steps_used: 0, solved: true }]);
        assert!(out.q.is_empty());
    }
}
