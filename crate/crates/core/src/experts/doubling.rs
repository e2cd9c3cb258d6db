//! Horizon- and budget-free wrapper that restarts the agnostic learner with
//! doubled guesses.
//!
//! The horizon guess is `g_T·u_T` and the budget guess `g_k·u_k`, where both
//! units are `log₂n`. Before each round the wrapper restarts if the current
//! epoch has already used up the horizon guess (doubling `g_T`) or if every
//! expert has made more false positives than the budget guess in this epoch
//! (doubling `g_k`). When both hold, both double. A restart forgets everything.

use bitvec::prelude::*;

use super::state::{ExpertLearnerState, Mode, Params};
use crate::error::{param, Result};
use crate::game::{Instance, Learner};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Restart {
    /// Round (1-based) that opened the new epoch.
    pub round: usize,
    pub doubled_horizon: bool,
    pub doubled_budget: bool,
}

/// Guess multipliers and the epoch bookkeeping that drives restarts.
#[derive(Clone, Debug, PartialEq)]
pub struct GuessSchedule {
    g_k: u64,
    g_t: u64,
    horizon_unit: f64,
    budget_unit: f64,
    epoch_start: usize,
    epoch_rounds: usize,
    rounds: usize,
    false_positives: Vec<u32>,
    restarts: Vec<Restart>,
}

impl GuessSchedule {
    pub fn new(n: usize, horizon_unit: f64, budget_unit: f64) -> Self {
        GuessSchedule {
            g_k: 1,
            g_t: 1,
            horizon_unit,
            budget_unit,
            epoch_start: 0,
            epoch_rounds: 0,
            rounds: 0,
            false_positives: vec![0; n],
            restarts: Vec::new(),
        }
    }

    pub fn g_k(&self) -> u64 {
        self.g_k
    }

    pub fn g_t(&self) -> u64 {
        self.g_t
    }

    pub fn horizon_guess(&self) -> f64 {
        self.g_t as f64 * self.horizon_unit
    }

    pub fn budget_guess(&self) -> f64 {
        self.g_k as f64 * self.budget_unit
    }

    /// Largest integer budget not above the budget guess.
    pub fn integer_budget(&self) -> u32 {
        self.budget_guess().floor() as u32
    }

    pub fn epoch_start(&self) -> usize {
        self.epoch_start
    }

    pub fn false_positives(&self) -> &[u32] {
        &self.false_positives
    }

    pub fn restarts(&self) -> &[Restart] {
        &self.restarts
    }

    /// Which guesses the next round would double.
    pub fn due(&self) -> (bool, bool) {
        let horizon = (self.epoch_rounds + 1) as f64 > self.horizon_guess();
        let k = self.budget_guess();
        let budget = !self.false_positives.is_empty() && self.false_positives.iter().all(|&c| c as f64 > k);
        (horizon, budget)
    }

    /// Doubles the flagged guesses and opens a new epoch with `n` experts.
    pub fn restart(&mut self, horizon: bool, budget: bool, n: usize, budget_unit: f64) {
        if horizon {
            self.g_t *= 2;
        }
        if budget {
            self.g_k *= 2;
        }
        self.budget_unit = budget_unit;
        self.epoch_start = self.rounds + 1;
        self.epoch_rounds = 0;
        self.false_positives = vec![0; n];
        self.restarts.push(Restart { round: self.rounds + 1, doubled_horizon: horizon, doubled_budget: budget });
    }

    /// Replaces the expert count and budget unit of the current epoch, for
    /// wrappers whose expert set depends on the new horizon guess.
    pub fn set_experts(&mut self, n: usize, budget_unit: f64) {
        self.budget_unit = budget_unit;
        self.false_positives = vec![0; n];
    }

    /// Records a finished round.
    pub fn record(&mut self, votes: &BitSlice, prediction: bool, feedback: Option<bool>) {
        self.rounds += 1;
        self.epoch_rounds += 1;
        if prediction && feedback == Some(false) {
            for j in votes.iter_ones() {
                self.false_positives[j] += 1;
            }
        }
    }
}

/// The doubling learner over a fixed set of `n` experts.
#[derive(Clone, Debug, PartialEq)]
pub struct DtExpAt {
    n: usize,
    schedule: GuessSchedule,
    inner: ExpertLearnerState,
}

impl DtExpAt {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return param(format!("at least two experts are required, got {n}"));
        }
        let unit = (n as f64).log2();
        let schedule = GuessSchedule::new(n, unit, unit);
        let inner = Self::fresh(n, &schedule)?;
        Ok(DtExpAt { n, schedule, inner })
    }

    fn fresh(n: usize, s: &GuessSchedule) -> Result<ExpertLearnerState> {
        let p = Params::agnostic_unchecked(n as f64, s.horizon_guess(), s.integer_budget())?;
        ExpertLearnerState::new(n, p, Mode::Agnostic)
    }

    pub fn schedule(&self) -> &GuessSchedule {
        &self.schedule
    }

    pub fn inner(&self) -> &ExpertLearnerState {
        &self.inner
    }
}

impl Learner for DtExpAt {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let (horizon, budget) = self.schedule.due();
        if horizon || budget {
            let unit = (self.n as f64).log2();
            self.schedule.restart(horizon, budget, self.n, unit);
            self.inner = Self::fresh(self.n, &self.schedule)?;
        }
        self.inner.predict(instance)
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        let votes = instance.votes()?;
        self.inner.update(votes, prediction, feedback)?;
        self.schedule.record(votes, prediction, feedback);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn play(l: &mut DtExpAt, bits: &[u8], y: bool) -> bool {
        let i = Instance::Votes(bits.iter().map(|&b| b == 1).collect());
        let p = l.predict(&i).unwrap();
        l.observe(&i, p, if p { Some(y) } else { None }).unwrap();
        p
    }

    #[test]
    fn initial_guesses() {
        let l = DtExpAt::new(4).unwrap();
        assert_eq!((l.schedule().g_k(), l.schedule().g_t()), (1, 1));
        assert_eq!(l.schedule().horizon_guess(), 2.0);
        assert_eq!(l.schedule().budget_guess(), 2.0);
        assert_eq!(l.inner().params().budget, 2);
        assert!(DtExpAt::new(1).is_err());
    }

    #[test]
    fn horizon_trigger_after_guess_is_used() {
        let mut l = DtExpAt::new(4).unwrap();
        play(&mut l, &[0, 0, 0, 0], false);
        play(&mut l, &[0, 0, 0, 0], false);
        assert_eq!(l.schedule().g_t(), 1);
        play(&mut l, &[0, 0, 0, 0], false);
        assert_eq!(l.schedule().g_t(), 2);
        assert_eq!(l.schedule().g_k(), 1);
        assert_eq!(l.schedule().restarts()[0], Restart { round: 3, doubled_horizon: true, doubled_budget: false });
        assert_eq!(l.schedule().epoch_start(), 3);
    }

    #[test]
    fn budget_trigger_needs_every_expert_over_budget() {
        let mut s = GuessSchedule::new(2, 100.0, 1.0);
        let v = bitvec![1, 1];
        s.record(&v, true, Some(false));
        assert_eq!(s.due(), (false, false));
        s.record(&v, true, Some(false));
        assert_eq!(s.due(), (false, true));
        s.restart(false, true, 2, 1.0);
        assert_eq!(s.g_k(), 2);
        assert_eq!(s.due(), (false, false), "fresh epoch cannot re-trigger");
    }

    #[test]
    fn both_triggers_double_both() {
        let mut s = GuessSchedule::new(1, 1.0, 0.5);
        s.record(&bitvec![1], true, Some(false));
        assert_eq!(s.due(), (true, true));
        s.restart(true, true, 1, 0.5);
        assert_eq!((s.g_t(), s.g_k()), (2, 2));
    }

    #[test]
    fn restart_restores_all_experts() {
        let mut l = DtExpAt::new(4).unwrap();
        play(&mut l, &[1, 1, 1, 1], false);
        let before = l.inner().clone();
        play(&mut l, &[1, 1, 1, 1], false);
        play(&mut l, &[0, 0, 0, 0], false);
        assert_eq!(l.schedule().restarts().len(), 1);
        assert_eq!(l.inner().live_count(), 4);
        assert!((0..4).all(|j| l.inner().distance(j) == 0));
        assert_ne!(&before, l.inner());
    }
}
