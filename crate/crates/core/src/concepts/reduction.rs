//! Reduction of a hypothesis class to experts, learned with the agnostic
//! exponential-weights learner.

use std::sync::Arc;

use bitvec::prelude::*;

use super::cover::{cover_size, CoverExpertSet, CoverRunner};
use crate::combinatorics::{littlestone_dim, FiniteClass, SearchBudget};
use crate::error::{Error, Result};
use crate::experts::bounds::agnostic_bounds;
use crate::experts::{ExpertLearnerState, MistakeBounds, Mode, Params};
use crate::game::{Instance, Learner};

/// Which expert set stands in for the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStrategy {
    /// Deviation-set experts.
    Deviation,
    /// One expert per hypothesis. Covers trivially.
    Identity,
    /// Whichever of the two is smaller; identity when the Littlestone search
    /// runs out of budget or on ties.
    Smaller,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    pub strategy: CoverStrategy,
    pub max_experts: usize,
    pub budget: SearchBudget,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { strategy: CoverStrategy::Smaller, max_experts: 1 << 20, budget: SearchBudget::new(20_000_000) }
    }
}

/// Per-round expert predictions for a class game.
#[derive(Clone, Debug)]
pub enum ExpertSource {
    Deviation(CoverRunner),
    Identity(Arc<FiniteClass>),
}

impl ExpertSource {
    pub fn new(class: Arc<FiniteClass>, horizon: usize, opts: &ReductionOptions) -> Result<Self> {
        let deviation = |ldim: Option<u32>| -> Result<ExpertSource> {
            let set = match ldim {
                Some(l) => CoverExpertSet::with_ldim(class.clone(), horizon, l, opts.max_experts)?,
                None => CoverExpertSet::build(class.clone(), horizon, opts.max_experts, opts.budget)?,
            };
            Ok(ExpertSource::Deviation(set.runner(opts.budget)))
        };
        match opts.strategy {
            CoverStrategy::Identity => Ok(ExpertSource::Identity(class)),
            CoverStrategy::Deviation => deviation(None),
            CoverStrategy::Smaller => {
                // A class of two or more hypotheses has L ≥ 1 and so at least T+1 deviation experts.
                if class.len() <= horizon + 1 {
                    return Ok(ExpertSource::Identity(class));
                }
                let ldim = match littlestone_dim(&class, opts.budget) {
                    Ok(l) => l,
                    Err(Error::Budget(_)) => return Ok(ExpertSource::Identity(class)),
                    Err(e) => return Err(e),
                };
                match cover_size(horizon, ldim) {
                    Some(s) if s < class.len() as u128 && s <= opts.max_experts as u128 => deviation(Some(ldim)),
                    _ => Ok(ExpertSource::Identity(class)),
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ExpertSource::Deviation(r) => r.len(),
            ExpertSource::Identity(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_deviation(&self) -> bool {
        matches!(self, ExpertSource::Deviation(_))
    }

    pub fn advance(&mut self, x: usize) -> Result<BitVec> {
        match self {
            ExpertSource::Deviation(r) => r.advance(x),
            ExpertSource::Identity(c) => {
                c.check_instance(x)?;
                Ok(c.column(x))
            }
        }
    }
}

/// Learner over the expert votes: exponential weights, or a plain copy when
/// there is only one expert.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Inner {
    Weights(ExpertLearnerState),
    Follow,
}

impl Inner {
    pub(crate) fn new(n: usize, params: Params) -> Result<Self> {
        if n == 1 {
            Ok(Inner::Follow)
        } else {
            Ok(Inner::Weights(ExpertLearnerState::new(n, params, Mode::Agnostic)?))
        }
    }

    pub(crate) fn predict(&mut self, votes: &BitSlice) -> Result<bool> {
        match self {
            Inner::Weights(s) => s.predict_votes(votes),
            Inner::Follow => Ok(votes[0]),
        }
    }

    pub(crate) fn update(&mut self, votes: &BitSlice, prediction: bool, feedback: Option<bool>) -> Result<()> {
        match self {
            Inner::Weights(s) => s.update(votes, prediction, feedback),
            Inner::Follow => match (prediction, feedback) {
                (false, Some(_)) => Err(Error::Protocol("label supplied after a prediction of 0".into())),
                (true, None) => Err(Error::Protocol("label missing after a prediction of 1".into())),
                _ => Ok(()),
            },
        }
    }
}

pub(crate) fn take_votes(votes: &mut Option<BitVec>) -> Result<BitVec> {
    votes.take().ok_or_else(|| Error::Protocol("observe called without a preceding predict".into()))
}

/// Agnostic learner over a cover of the class for a known horizon and budget.
#[derive(Clone, Debug)]
pub struct ReductionLearner {
    source: ExpertSource,
    inner: Inner,
    params: Params,
    horizon: usize,
    votes: Option<BitVec>,
}

impl ReductionLearner {
    /// Horizons below 2 are treated as 2 when setting the learning rate.
    pub fn new(class: Arc<FiniteClass>, horizon: usize, k: u32, opts: ReductionOptions) -> Result<Self> {
        let source = ExpertSource::new(class, horizon, &opts)?;
        let n = source.len();
        let params = Params::agnostic_unchecked(n.max(2) as f64, horizon.max(2) as f64, k)?;
        let inner = Inner::new(n, params)?;
        Ok(ReductionLearner { source, inner, params, horizon, votes: None })
    }

    /// Number of experts in the cover.
    pub fn experts(&self) -> usize {
        self.source.len()
    }

    pub fn uses_deviation_cover(&self) -> bool {
        self.source.is_deviation()
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Agnostic bound with `n` the cover size; a single covering expert makes
    /// at most `k` mistakes of either kind.
    pub fn bounds(&self) -> MistakeBounds {
        match self.inner {
            Inner::Follow => {
                let k = self.params.budget as f64;
                MistakeBounds { false_negatives: k, false_positives: k }
            }
            Inner::Weights(_) => agnostic_bounds(&self.params, self.horizon.max(2)),
        }
    }

    /// Votes of the cover experts on the current round, between predict and
    /// observe.
    pub fn current_votes(&self) -> Option<&BitSlice> {
        self.votes.as_deref()
    }
}

impl Learner for ReductionLearner {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        let votes = self.source.advance(instance.point()?)?;
        let p = self.inner.predict(&votes)?;
        self.votes = Some(votes);
        Ok(p)
    }

    fn observe(&mut self, _instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        let votes = take_votes(&mut self.votes)?;
        self.inner.update(&votes, prediction, feedback)
    }
}

/// The reduction learner with the default cover choice.
pub fn make_reduction_learner(class: Arc<FiniteClass>, horizon: usize, k: u32) -> Result<ReductionLearner> {
    ReductionLearner::new(class, horizon, k, ReductionOptions::default())
}
