//! Horizon- and budget-free reduction learner.
//!
//! Guesses follow the expert wrapper's schedule with horizon unit
//! `log₂|H|` and budget unit `log₂` of the current cover size. Each epoch
//! builds a cover for its horizon guess, so a doubled horizon enlarges the
//! expert set.

use std::sync::Arc;

use bitvec::prelude::*;

use super::reduction::{take_votes, ExpertSource, Inner, ReductionOptions};
use crate::combinatorics::FiniteClass;
use crate::error::Result;
use crate::experts::{GuessSchedule, Params};
use crate::game::{Instance, Learner};

#[derive(Clone, Debug)]
pub struct DoublingReduction {
    class: Arc<FiniteClass>,
    opts: ReductionOptions,
    schedule: GuessSchedule,
    source: ExpertSource,
    inner: Inner,
    votes: Option<BitVec>,
    cover_sizes: Vec<usize>,
}

impl DoublingReduction {
    pub fn new(class: Arc<FiniteClass>) -> Result<Self> {
        Self::with_options(class, ReductionOptions::default())
    }

    pub fn with_options(class: Arc<FiniteClass>, opts: ReductionOptions) -> Result<Self> {
        let unit = (class.len().max(2) as f64).log2();
        let schedule = GuessSchedule::new(1, unit, 1.0);
        let source = ExpertSource::Identity(class.clone());
        let mut out = DoublingReduction {
            class,
            opts,
            schedule,
            source,
            inner: Inner::Follow,
            votes: None,
            cover_sizes: Vec::new(),
        };
        out.open_epoch()?;
        Ok(out)
    }

    fn open_epoch(&mut self) -> Result<()> {
        let horizon = self.schedule.horizon_guess().ceil().max(1.0) as usize;
        self.source = ExpertSource::new(self.class.clone(), horizon, &self.opts)?;
        let n = self.source.len();
        self.schedule.set_experts(n, (n.max(2) as f64).log2());
        let params =
            Params::agnostic_unchecked(n.max(2) as f64, self.schedule.horizon_guess(), self.schedule.integer_budget())?;
        self.inner = Inner::new(n, params)?;
        self.cover_sizes.push(n);
        Ok(())
    }

    pub fn schedule(&self) -> &GuessSchedule {
        &self.schedule
    }

    /// Expert count of every epoch so far.
    pub fn cover_sizes(&self) -> &[usize] {
        &self.cover_sizes
    }
}

impl Learner for DoublingReduction {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let x = instance.point()?;
        self.class.check_instance(x)?;
        let (horizon, budget) = self.schedule.due();
        if horizon || budget {
            let n = self.source.len();
            self.schedule.restart(horizon, budget, n, (n.max(2) as f64).log2());
            self.open_epoch()?;
        }
        let votes = self.source.advance(x)?;
        let p = self.inner.predict(&votes)?;
        self.votes = Some(votes);
        Ok(p)
    }

    fn observe(&mut self, _instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        let votes = take_votes(&mut self.votes)?;
        self.inner.update(&votes, prediction, feedback)?;
        self.schedule.record(&votes, prediction, feedback);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn play(l: &mut DoublingReduction, x: usize, y: bool) -> bool {
        let i = Instance::Point(x);
        let p = l.predict(&i).unwrap();
        l.observe(&i, p, if p { Some(y) } else { None }).unwrap();
        p
    }

    #[test]
    fn first_epoch_uses_log_class_size() {
        let h = Arc::new(FiniteClass::singletons(8, false).unwrap());
        let l = DoublingReduction::new(h).unwrap();
        assert_eq!(l.schedule().horizon_guess(), 3.0);
        // L = 1, so three rounds need only 1 + 3 deviation experts.
        assert_eq!(l.cover_sizes(), &[4]);
    }

    #[test]
    fn horizon_doubles_and_cover_grows() {
        let h = Arc::new(FiniteClass::thresholds(60).unwrap());
        let mut l = DoublingReduction::new(h).unwrap();
        for t in 0..40 {
            play(&mut l, t % 60, false);
        }
        let sizes = l.cover_sizes();
        assert!(sizes.len() >= 2);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        assert!(l.schedule().g_t() >= 2);
    }
}
