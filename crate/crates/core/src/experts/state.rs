//! Exponential-weights learner over experts with apple-tasting feedback.
//!
//! An expert's weight is `2^(k_j + η·d_j)` where `d_j` counts rounds in which
//! it voted 1 while the learner predicted 0, and `k_j` is its remaining
//! false-positive budget. The learner predicts 1 iff the live experts voting 1
//! weigh at least `L` in total. A false positive charges every live expert that
//! voted 1; experts already at budget 0 leave the version space.

use bitvec::prelude::*;

use crate::error::{param, Error, Result};
use crate::game::{Instance, Learner};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Budgets are identically 0.
    Realizable,
    Agnostic,
}

/// Learning rate, threshold and initial budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub eta: f64,
    pub threshold: f64,
    pub budget: u32,
}

impl Params {
    /// `η = √(log₂n / T)`, `L = n`.
    pub fn realizable(n: usize, horizon: usize) -> Result<Self> {
        check_sizes(n, horizon)?;
        Ok(Params { eta: ((n as f64).log2() / horizon as f64).sqrt(), threshold: n as f64, budget: 0 })
    }

    /// `η = √((k + log₂n) / T)`, `L = n·2^(k+1)`.
    pub fn agnostic(n: usize, horizon: usize, k: u32) -> Result<Self> {
        check_sizes(n, horizon)?;
        Self::agnostic_unchecked(n as f64, horizon as f64, k)
    }

    /// Same formulas for real-valued guesses of the horizon.
    pub(crate) fn agnostic_unchecked(n: f64, horizon: f64, k: u32) -> Result<Self> {
        let p = Params {
            eta: ((k as f64 + n.log2()) / horizon).sqrt(),
            threshold: n * 2f64.powi(k as i32 + 1),
            budget: k,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return param(format!("learning rate must be positive and finite, got {}", self.eta));
        }
        if !(self.threshold.is_finite() && self.threshold > 1.0) {
            return param(format!("threshold must be finite and above 1, got {}", self.threshold));
        }
        Ok(())
    }

    /// Condition `n ≤ η·L·T / 2^(k+1)` under which the mistake bounds hold.
    pub fn is_valid_for(&self, n: usize, horizon: usize) -> bool {
        n as f64 <= self.eta * self.threshold * horizon as f64 / 2f64.powi(self.budget as i32 + 1)
    }
}

fn check_sizes(n: usize, horizon: usize) -> Result<()> {
    if n < 2 {
        return param(format!("at least two experts are required, got {n}"));
    }
    if horizon < 2 {
        return param(format!("horizon must be at least 2, got {horizon}"));
    }
    Ok(())
}

/// True iff `Σ 2^e ≥ threshold` over the given exponents.
///
/// The sum is shifted by the integer part of the largest exponent, so terms
/// with integral exponents and the rescaled threshold are exact and a tie
/// resolves to true.
pub fn weight_reaches(exponents: &[f64], threshold: f64) -> bool {
    let Some(max) = exponents.iter().copied().reduce(f64::max) else {
        return false;
    };
    let shift = max.floor();
    let sum: f64 = exponents.iter().map(|&e| (e - shift).exp2()).sum();
    sum >= threshold * (-shift).exp2()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpertLearnerState {
    n: usize,
    params: Params,
    mode: Mode,
    live: BitVec,
    live_count: usize,
    distance: Vec<u32>,
    budget: Vec<u32>,
    scratch: Vec<f64>,
}

impl ExpertLearnerState {
    pub fn new(n: usize, params: Params, mode: Mode) -> Result<Self> {
        if n == 0 {
            return param("at least one expert is required");
        }
        params.validate()?;
        if mode == Mode::Realizable && params.budget != 0 {
            return param("realizable mode requires a zero budget");
        }
        Ok(ExpertLearnerState {
            n,
            params,
            mode,
            live: bitvec![1; n],
            live_count: n,
            distance: vec![0; n],
            budget: vec![params.budget; n],
            scratch: Vec::new(),
        })
    }

    /// The realizable learner with `η = √(log₂n/T)` and `L = n`.
    pub fn realizable(n: usize, horizon: usize) -> Result<Self> {
        Self::new(n, Params::realizable(n, horizon)?, Mode::Realizable)
    }

    /// The agnostic learner with `η = √((k+log₂n)/T)` and `L = n·2^(k+1)`.
    pub fn agnostic(n: usize, horizon: usize, k: u32) -> Result<Self> {
        Self::new(n, Params::agnostic(n, horizon, k)?, Mode::Agnostic)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_live(&self, j: usize) -> bool {
        self.live[j]
    }

    pub fn live(&self) -> &BitSlice {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn distance(&self, j: usize) -> u32 {
        self.distance[j]
    }

    pub fn budget(&self, j: usize) -> u32 {
        self.budget[j]
    }

    /// `k_j + η·d_j`.
    pub fn exponent(&self, j: usize) -> f64 {
        self.budget[j] as f64 + self.params.eta * self.distance[j] as f64
    }

    fn check_votes(&self, votes: &BitSlice) -> Result<()> {
        if votes.len() != self.n {
            return Err(Error::Domain(format!("expected {} votes, got {}", self.n, votes.len())));
        }
        Ok(())
    }

    /// Live experts voting 1, ascending.
    pub fn live_voters<'a>(&'a self, votes: &'a BitSlice) -> impl Iterator<Item = usize> + 'a {
        votes.iter_ones().filter(move |&j| self.live[j])
    }

    pub fn predict_votes(&mut self, votes: &BitSlice) -> Result<bool> {
        self.check_votes(votes)?;
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        scratch.extend(self.live_voters(votes).map(|j| self.exponent(j)));
        let out = weight_reaches(&scratch, self.params.threshold);
        self.scratch = scratch;
        Ok(out)
    }

    /// Applies one round of feedback.
    pub fn update(&mut self, votes: &BitSlice, prediction: bool, feedback: Option<bool>) -> Result<()> {
        self.check_votes(votes)?;
        match (prediction, feedback) {
            (false, Some(_)) => Err(Error::Protocol("label supplied after a prediction of 0".into())),
            (true, None) => Err(Error::Protocol("label missing after a prediction of 1".into())),
            (false, None) => {
                for j in votes.iter_ones() {
                    if self.live[j] {
                        self.distance[j] += 1;
                    }
                }
                Ok(())
            }
            (true, Some(true)) => Ok(()),
            (true, Some(false)) => {
                for j in votes.iter_ones() {
                    if !self.live[j] {
                        continue;
                    }
                    if self.budget[j] == 0 {
                        self.live.set(j, false);
                        self.live_count -= 1;
                    } else {
                        self.budget[j] -= 1;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Learner for ExpertLearnerState {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        self.predict_votes(instance.votes()?)
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        self.update(instance.votes()?, prediction, feedback)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVec {
        bits.iter().map(|&b| b == 1).collect()
    }

    #[test]
    fn realizable_parameters() {
        let p = Params::realizable(4, 16).unwrap();
        assert!((p.eta - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert_eq!(p.threshold, 4.0);
        let p = Params::realizable(2, 2).unwrap();
        assert!((p.eta - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(p.threshold, 2.0);
        assert!(ExpertLearnerState::realizable(1, 16).is_err());
        assert!(ExpertLearnerState::realizable(4, 1).is_err());
    }

    #[test]
    fn agnostic_parameters() {
        let p = Params::agnostic(4, 16, 0).unwrap();
        assert!((p.eta - (2.0f64 / 16.0).sqrt()).abs() < 1e-15);
        assert_eq!(p.threshold, 8.0);
        let p = Params::agnostic(4, 16, 2).unwrap();
        assert_eq!(p.eta, 0.5);
        assert_eq!(p.threshold, 32.0);
        assert!(p.is_valid_for(4, 16));
    }

    #[test]
    fn threshold_examples() {
        let mut s = ExpertLearnerState::realizable(4, 16).unwrap();
        assert!(!s.predict_votes(&bv(&[0, 0, 0, 0])).unwrap());
        assert!(s.predict_votes(&bv(&[1, 1, 1, 1])).unwrap());
        for _ in 0..7 {
            s.update(&bv(&[0, 0, 1, 0]), false, None).unwrap();
        }
        assert_eq!(s.distance(2), 7);
        assert!(s.predict_votes(&bv(&[0, 0, 1, 0])).unwrap());
        assert!(!s.predict_votes(&bv(&[0, 1, 0, 0])).unwrap());
    }

    #[test]
    fn update_examples() {
        let mut s = ExpertLearnerState::agnostic(3, 16, 2).unwrap();
        for _ in 0..3 {
            s.update(&bv(&[1, 0, 0]), false, None).unwrap();
        }
        assert_eq!((s.distance(0), s.budget(0)), (3, 2));
        s.update(&bv(&[0, 1, 0]), false, None).unwrap();
        assert_eq!(s.distance(1), 1);
        s.update(&bv(&[1, 0, 0]), true, Some(false)).unwrap();
        assert_eq!((s.distance(0), s.budget(0), s.is_live(0)), (3, 1, true));
        s.update(&bv(&[1, 0, 0]), true, Some(false)).unwrap();
        s.update(&bv(&[1, 0, 0]), true, Some(false)).unwrap();
        assert!(!s.is_live(0));
        assert_eq!(s.live_count(), 2);
        s.update(&bv(&[1, 1, 1]), true, Some(true)).unwrap();
        assert_eq!((s.budget(1), s.budget(2)), (2, 2));
    }

    #[test]
    fn realizable_removes_on_first_false_positive() {
        let mut s = ExpertLearnerState::realizable(3, 8).unwrap();
        s.update(&bv(&[1, 1, 0]), true, Some(false)).unwrap();
        assert_eq!(s.live_count(), 1);
        assert!(s.is_live(2));
    }

    #[test]
    fn protocol_errors() {
        let mut s = ExpertLearnerState::realizable(2, 8).unwrap();
        assert!(matches!(s.update(&bv(&[1, 0]), false, Some(true)), Err(Error::Protocol(_))));
        assert!(matches!(s.update(&bv(&[1, 0]), true, None), Err(Error::Protocol(_))));
        assert!(matches!(s.predict_votes(&bv(&[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn ties_predict_one() {
        assert!(weight_reaches(&[0.0, 0.0, 1.0], 4.0));
        assert!(!weight_reaches(&[0.0, 0.0, 1.0], 4.000_000_001));
        assert!(weight_reaches(&[40.0, 40.0], 2f64.powi(41)));
        assert!(!weight_reaches(&[], 2.0));
    }

    #[test]
    fn large_exponents_do_not_overflow() {
        assert!(weight_reaches(&[2000.0, 2000.0], 1e300));
    }
}
