//! Repetition adversary on the left spine of a shattered width-1 tree.
//!
//! The first `D` spine instances are asked `D(k+1)` times each, in order. A
//! prediction of 1 is answered 0. If an instance draws fewer than `k+1`
//! predictions of 1, the hypothesis realizing the right branch at that node is
//! fixed as the witness: its deferred rounds on that instance get label 1 and
//! every later round is labelled honestly. If no instance qualifies, the
//! hypothesis realizing the all-left branch is the witness.

use std::sync::Arc;

use crate::combinatorics::class::bit;
use crate::combinatorics::{is_shattered, BudgetedClass, FiniteClass, WidthTree};
use crate::error::{param, Error, Result};
use crate::game::{Adversary, Domain, Finalization, Instance, Response};

#[derive(Clone, Debug)]
pub struct Width1Adversary {
    class: Arc<FiniteClass>,
    k: usize,
    spine: Vec<usize>,
    repeats: usize,
    /// Hypothesis index realizing the right branch at each spine node.
    right: Vec<usize>,
    left: usize,
    ones: usize,
    locked: Option<usize>,
    points: Vec<usize>,
    deferred: Vec<usize>,
}

impl Width1Adversary {
    pub fn new(class: Arc<FiniteClass>, tree: &WidthTree, k: usize, depth: usize, horizon: usize) -> Result<Self> {
        if !tree.is_width(1) {
            return param("tree is not a width-1 tree");
        }
        let full = tree.left_spine();
        if full.len() < depth {
            return param(format!("tree spine has {} nodes, need {depth}", full.len()));
        }
        if !is_shattered(tree, &BudgetedClass::from_class(&class, 0))? {
            return param("tree is not shattered by the class");
        }
        let repeats = depth * (k + 1);
        if depth * repeats > horizon {
            return param(format!("horizon {horizon} is below D²(k+1) = {}", depth * repeats));
        }
        let spine = full[..depth].to_vec();
        let realizer = |ones_at: Option<usize>| -> Result<usize> {
            let upto = ones_at.map_or(depth, |i| i + 1);
            class
                .rows()
                .iter()
                .position(|&r| spine[..upto].iter().enumerate().all(|(j, &x)| bit(r, x) == (Some(j) == ones_at)))
                .ok_or_else(|| Error::Certificate("shattered tree lacks a branch realizer".into()))
        };
        let right = (0..depth).map(|i| realizer(Some(i))).collect::<Result<Vec<_>>>()?;
        let left = realizer(None)?;
        Ok(Width1Adversary {
            class,
            k,
            spine,
            repeats,
            right,
            left,
            ones: 0,
            locked: None,
            points: Vec::with_capacity(horizon),
            deferred: Vec::new(),
        })
    }

    /// Witness fixed so far.
    pub fn locked(&self) -> Option<usize> {
        self.locked
    }

    fn block_of(&self, t: usize) -> Option<usize> {
        let i = (t - 1) / self.repeats.max(1);
        (i < self.spine.len()).then_some(i)
    }

    fn witness(&self) -> usize {
        self.locked.unwrap_or(self.left)
    }
}

impl Adversary for Width1Adversary {
    fn domain(&self) -> Domain {
        Domain::Class(self.class.clone())
    }

    fn realizability(&self) -> usize {
        self.k
    }

    fn instance(&mut self, t: usize) -> Result<Instance> {
        let x = match self.block_of(t) {
            Some(i) => self.spine[i],
            None => self.spine.first().copied().unwrap_or(0),
        };
        self.points.push(x);
        Ok(Instance::Point(x))
    }

    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response> {
        let x = self.points[t - 1];
        let block = self.block_of(t);
        if self.locked.is_some() || block.is_none() {
            return Ok(Response::Label(self.class.get(self.witness(), x)));
        }
        let out = if prediction {
            self.ones += 1;
            Response::Label(false)
        } else {
            self.deferred.push(t);
            Response::Defer
        };
        if t % self.repeats == 0 {
            if self.ones < self.k + 1 {
                self.locked = block.map(|i| self.right[i]);
            }
            self.ones = 0;
        }
        Ok(out)
    }

    fn finalize(&mut self) -> Result<Finalization> {
        let w = self.witness();
        let labels = self.deferred.iter().map(|&t| (t, self.class.get(w, self.points[t - 1]))).collect();
        Ok(Finalization { labels, witness: w })
    }
}
