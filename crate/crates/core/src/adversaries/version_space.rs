//! Version-space adversary for a finite class.
//!
//! Instances are shown in domain order, cycling if the game outlasts the
//! domain. While at least `threshold` hypotheses remain consistent, every
//! prediction of 1 is answered 0 and the inconsistent hypotheses are dropped.
//! After that the first consistent hypothesis is fixed and labels follow it.
//! A 0 answer that would leave no consistent hypothesis is replaced by fixing
//! the witness early.

use std::sync::Arc;

use crate::combinatorics::FiniteClass;
use crate::error::{param, Result};
use crate::game::{Adversary, Domain, Finalization, Instance, Response};

#[derive(Clone, Debug)]
pub struct VersionSpaceAdversary {
    class: Arc<FiniteClass>,
    threshold: usize,
    live: Vec<usize>,
    locked: Option<usize>,
    points: Vec<usize>,
    deferred: Vec<usize>,
}

impl VersionSpaceAdversary {
    pub fn new(class: Arc<FiniteClass>, threshold: usize) -> Result<Self> {
        if threshold == 0 {
            return param("threshold must be at least 1");
        }
        let live = (0..class.len()).collect();
        Ok(VersionSpaceAdversary { class, threshold, live, locked: None, points: Vec::new(), deferred: Vec::new() })
    }

    /// Hypotheses consistent with every committed label.
    pub fn live(&self) -> &[usize] {
        &self.live
    }

    pub fn locked(&self) -> Option<usize> {
        self.locked
    }

    fn lock(&mut self) -> usize {
        let h = self.live[0];
        self.locked = Some(h);
        h
    }
}

impl Adversary for VersionSpaceAdversary {
    fn domain(&self) -> Domain {
        Domain::Class(self.class.clone())
    }

    fn realizability(&self) -> usize {
        0
    }

    fn instance(&mut self, t: usize) -> Result<Instance> {
        let x = (t - 1) % self.class.domain_size();
        self.points.push(x);
        Ok(Instance::Point(x))
    }

    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response> {
        let x = self.points[t - 1];
        if let Some(h) = self.locked {
            return Ok(Response::Label(self.class.get(h, x)));
        }
        if !prediction {
            self.deferred.push(t);
            return Ok(Response::Defer);
        }
        if self.live.len() >= self.threshold {
            let zeros: Vec<usize> = self.live.iter().copied().filter(|&h| !self.class.get(h, x)).collect();
            if !zeros.is_empty() {
                self.live = zeros;
                return Ok(Response::Label(false));
            }
        }
        let h = self.lock();
        Ok(Response::Label(self.class.get(h, x)))
    }

    fn finalize(&mut self) -> Result<Finalization> {
        let w = self.locked.unwrap_or(self.live[0]);
        let labels = self.deferred.iter().map(|&t| (t, self.class.get(w, self.points[t - 1]))).collect();
        Ok(Finalization { labels, witness: w })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experts::ConstantLearner;
    use crate::game::{run_game, score, verify_certificate};

    #[test]
    fn silent_learner_misses_first_hypothesis_ones() {
        let h = Arc::new(FiniteClass::from_strings(&["1101", "0010"]).unwrap());
        let mut adv = VersionSpaceAdversary::new(h, 2).unwrap();
        let tr = run_game(&mut ConstantLearner(false), &mut adv, 4).unwrap();
        assert_eq!(tr.certificate.as_ref().unwrap().witness, 0);
        assert_eq!(score(&tr).unwrap().false_negatives, 3);
        assert!(verify_certificate(&tr).unwrap());
    }

    #[test]
    fn threshold_one_only_eliminates() {
        let h = Arc::new(FiniteClass::from_strings(&["10", "01", "00"]).unwrap());
        let mut adv = VersionSpaceAdversary::new(h, 1).unwrap();
        let tr = run_game(&mut ConstantLearner(true), &mut adv, 4).unwrap();
        assert_eq!(adv.live(), &[2]);
        assert_eq!(adv.locked(), None);
        assert_eq!(score(&tr).unwrap().false_positives, 4);
        assert!(verify_certificate(&tr).unwrap());
    }

    #[test]
    fn never_empties_the_version_space() {
        let h = Arc::new(FiniteClass::from_strings(&["11", "10"]).unwrap());
        let mut adv = VersionSpaceAdversary::new(h, 1).unwrap();
        let tr = run_game(&mut ConstantLearner(true), &mut adv, 3).unwrap();
        assert_eq!(adv.locked(), Some(0));
        assert!(verify_certificate(&tr).unwrap());
        assert!(VersionSpaceAdversary::new(Arc::new(FiniteClass::zero(2).unwrap()), 0).is_err());
    }
}
