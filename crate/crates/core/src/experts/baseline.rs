//! Reference learners and the class-to-experts adapter.

use std::sync::Arc;

use bitvec::prelude::*;

use crate::combinatorics::FiniteClass;
use crate::error::Result;
use crate::game::{Instance, Learner};

/// Always predicts the same bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantLearner(pub bool);

impl Learner for ConstantLearner {
    fn predict(&mut self, _instance: &Instance) -> Result<bool> {
        Ok(self.0)
    }

    fn observe(&mut self, _instance: &Instance, _prediction: bool, _feedback: Option<bool>) -> Result<()> {
        Ok(())
    }
}

/// Copies one fixed expert.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FollowExpert {
    expert: usize,
}

impl FollowExpert {
    pub fn new(expert: usize) -> Self {
        FollowExpert { expert }
    }
}

impl Learner for FollowExpert {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let v = instance.votes()?;
        v.get(self.expert).map(|b| *b).ok_or_else(|| {
            crate::Error::Domain(format!("expert {} missing from a vote vector of length {}", self.expert, v.len()))
        })
    }

    fn observe(&mut self, _instance: &Instance, _prediction: bool, _feedback: Option<bool>) -> Result<()> {
        Ok(())
    }
}

/// Predicts 1 whenever some expert not yet caught in a false positive votes 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Greedy {
    live: BitVec,
}

impl Greedy {
    pub fn new(n: usize) -> Self {
        Greedy { live: bitvec![1; n] }
    }

    pub fn live_count(&self) -> usize {
        self.live.count_ones()
    }
}

impl Learner for Greedy {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let v = instance.votes()?;
        if v.len() != self.live.len() {
            return Err(crate::Error::Domain(format!("expected {} votes, got {}", self.live.len(), v.len())));
        }
        Ok(v.iter_ones().any(|j| self.live[j]))
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        if prediction && feedback == Some(false) {
            for j in instance.votes()?.iter_ones() {
                self.live.set(j, false);
            }
        }
        Ok(())
    }
}

/// Runs an experts learner on a class game: hypothesis `i` becomes expert `i`
/// and a domain instance becomes the column of predictions on it.
#[derive(Clone, Debug)]
pub struct OverClass<L> {
    class: Arc<FiniteClass>,
    inner: L,
}

impl<L> OverClass<L> {
    pub fn new(class: Arc<FiniteClass>, inner: L) -> Self {
        OverClass { class, inner }
    }

    pub fn inner(&self) -> &L {
        &self.inner
    }

    fn to_votes(&self, instance: &Instance) -> Result<Instance> {
        let x = instance.point()?;
        self.class.check_instance(x)?;
        Ok(Instance::Votes(self.class.column(x)))
    }
}

impl<L: Learner> Learner for OverClass<L> {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let v = self.to_votes(instance)?;
        self.inner.predict(&v)
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        let v = self.to_votes(instance)?;
        self.inner.observe(&v, prediction, feedback)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_drops_caught_experts() {
        let mut g = Greedy::new(3);
        let i = Instance::Votes(bitvec![1, 1, 0]);
        assert!(g.predict(&i).unwrap());
        g.observe(&i, true, Some(false)).unwrap();
        assert_eq!(g.live_count(), 1);
        assert!(!g.predict(&i).unwrap());
    }

    #[test]
    fn adapter_builds_columns() {
        let h = Arc::new(FiniteClass::from_strings(&["10", "11"]).unwrap());
        let mut l = OverClass::new(h, FollowExpert::new(0));
        assert!(l.predict(&Instance::Point(0)).unwrap());
        assert!(!l.predict(&Instance::Point(1)).unwrap());
        assert!(l.predict(&Instance::Point(2)).is_err());
    }
}
