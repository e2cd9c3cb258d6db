//! Version-space learners over budgeted classes.

use std::sync::Arc;

use crate::combinatorics::{BudgetedClass, FiniteClass};
use crate::error::{Error, Result};
use crate::game::{Instance, Learner};

fn label_of(prediction: bool, feedback: Option<bool>) -> Result<Option<bool>> {
    match (prediction, feedback) {
        (true, Some(y)) => Ok(Some(y)),
        (false, None) => Ok(None),
        (true, None) => Err(Error::Protocol("label missing after a prediction of 1".into())),
        (false, Some(_)) => Err(Error::Protocol("label supplied after a prediction of 0".into())),
    }
}

/// Predicts 1 iff some hypothesis left in the budgeted version space predicts
/// 1; after a prediction of 1 restricts the version space by the revealed
/// label. The version space starts as every hypothesis with budget `k`.
///
/// [`NarrowConceptAt::new`] drops every hypothesis predicting 0 when a 1 is
/// revealed, which keeps the witness only if it never misses a 1.
/// [`NarrowConceptAt::charging`] charges those hypotheses one unit of budget
/// instead, so a witness with at most `k` disagreements of either kind stays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NarrowConceptAt {
    class: Arc<FiniteClass>,
    k: u32,
    charging: bool,
    version_space: BudgetedClass,
}

impl NarrowConceptAt {
    pub fn new(class: Arc<FiniteClass>, k: u32) -> Self {
        let version_space = BudgetedClass::from_class(&class, k);
        NarrowConceptAt { class, k, charging: false, version_space }
    }

    pub fn charging(class: Arc<FiniteClass>, k: u32) -> Self {
        NarrowConceptAt { charging: true, ..Self::new(class, k) }
    }

    pub fn is_charging(&self) -> bool {
        self.charging
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn version_space(&self) -> &BudgetedClass {
        &self.version_space
    }

    fn point(&self, instance: &Instance) -> Result<usize> {
        let x = instance.point()?;
        self.class.check_instance(x)?;
        Ok(x)
    }
}

impl Learner for NarrowConceptAt {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let x = self.point(instance)?;
        Ok(self.version_space.any_predicts_one(x))
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        let x = self.point(instance)?;
        if let Some(y) = label_of(prediction, feedback)? {
            self.version_space = if self.charging {
                self.version_space.restrict_charging(x, y)?
            } else {
                self.version_space.restrict(x, y)?
            };
        }
        Ok(())
    }
}

/// Budget-free variant: starts with budget 1 and, whenever the version space
/// empties, doubles the budget and starts over from the full class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingNarrow {
    inner: NarrowConceptAt,
    rounds: usize,
    doublings: Vec<usize>,
}

impl DoublingNarrow {
    pub fn new(class: Arc<FiniteClass>) -> Self {
        DoublingNarrow { inner: NarrowConceptAt::new(class, 1), rounds: 0, doublings: Vec::new() }
    }

    /// Current budget guess.
    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Rounds (1-based) after which the guess doubled.
    pub fn doublings(&self) -> &[usize] {
        &self.doublings
    }

    pub fn version_space(&self) -> &BudgetedClass {
        self.inner.version_space()
    }
}

impl Learner for DoublingNarrow {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        self.inner.predict(instance)
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        self.rounds += 1;
        self.inner.observe(instance, prediction, feedback)?;
        if self.inner.version_space.is_empty() {
            let k = self.inner.k.saturating_mul(2);
            self.inner = NarrowConceptAt::new(self.inner.class.clone(), k);
            self.doublings.push(self.rounds);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step<L: Learner>(l: &mut L, x: usize, y: bool) -> bool {
        let i = Instance::Point(x);
        let p = l.predict(&i).unwrap();
        l.observe(&i, p, if p { Some(y) } else { None }).unwrap();
        p
    }

    #[test]
    fn predicts_one_when_any_hypothesis_does() {
        let h = Arc::new(FiniteClass::from_strings(&["100", "000"]).unwrap());
        let mut l = NarrowConceptAt::new(h, 0);
        assert!(step(&mut l, 0, true));
        assert_eq!(l.version_space().len(), 1);
        assert!(!step(&mut l, 1, true));
        assert_eq!(l.version_space().len(), 1);
    }

    #[test]
    fn false_positive_charges_budget() {
        let h = Arc::new(FiniteClass::from_strings(&["110", "010"]).unwrap());
        let mut l = NarrowConceptAt::new(h, 1);
        assert!(step(&mut l, 1, false));
        assert_eq!(l.version_space().entries(), &[(0b010, 0), (0b011, 0)]);
        assert!(step(&mut l, 0, false));
        assert_eq!(l.version_space().entries(), &[(0b010, 0)]);
    }

    #[test]
    fn revealed_one_drops_or_charges() {
        let h = Arc::new(FiniteClass::from_strings(&["10", "01"]).unwrap());
        let mut l = NarrowConceptAt::new(h.clone(), 1);
        assert!(step(&mut l, 0, true));
        assert_eq!(l.version_space().entries(), &[(0b01, 1)]);
        let mut c = NarrowConceptAt::charging(h, 1);
        assert!(step(&mut c, 0, true));
        assert_eq!(c.version_space().entries(), &[(0b01, 1), (0b10, 0)]);
        assert!(step(&mut c, 0, true));
        assert_eq!(c.version_space().entries(), &[(0b01, 1)]);
    }

    #[test]
    fn protocol_is_enforced() {
        let h = Arc::new(FiniteClass::zero(2).unwrap());
        let mut l = NarrowConceptAt::new(h, 0);
        assert!(l.observe(&Instance::Point(0), false, Some(true)).is_err());
        assert!(l.predict(&Instance::Point(5)).is_err());
    }

    #[test]
    fn doubling_starts_over_on_empty_version_space() {
        let h = Arc::new(FiniteClass::from_strings(&["1"]).unwrap());
        let mut l = DoublingNarrow::new(h);
        assert!(step(&mut l, 0, false));
        assert_eq!(l.k(), 1);
        assert!(step(&mut l, 0, false));
        assert_eq!(l.k(), 2);
        assert_eq!(l.doublings(), &[2]);
        assert_eq!(l.version_space().len(), 1);
    }
}
