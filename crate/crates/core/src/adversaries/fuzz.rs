//! Seeded random adversaries with a hidden witness.
//!
//! The witness is drawn first. Expert votes are noisy copies of the witness'
//! vote with a per-expert noise rate; class instances are uniform domain
//! points. The label is the witness' prediction, flipped at random while the
//! flip allowance `k` lasts. Every round is labelled at once.

use std::sync::Arc;

use bitvec::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::FiniteClass;
use crate::error::{param, Result};
use crate::game::{Adversary, Domain, Finalization, Instance, Response};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzKind {
    Realizable,
    Agnostic,
}

#[derive(Clone, Debug)]
pub enum FuzzSource {
    Experts(usize),
    Class(Arc<FiniteClass>),
}

#[derive(Clone, Debug)]
pub struct FuzzAdversary {
    source: FuzzSource,
    k: usize,
    rng: ChaCha8Rng,
    witness: usize,
    density: f64,
    noise: Vec<f64>,
    flips_left: usize,
    flip_prob: f64,
    label: bool,
}

impl FuzzAdversary {
    pub fn new(kind: FuzzKind, source: FuzzSource, horizon: usize, k: usize, seed: u64) -> Result<Self> {
        if kind == FuzzKind::Realizable && k != 0 {
            return param("a realizable fuzzer has budget 0");
        }
        let size = match &source {
            FuzzSource::Experts(n) => *n,
            FuzzSource::Class(c) => c.len(),
        };
        if size == 0 {
            return param("fuzzer needs at least one expert");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let witness = rng.gen_range(0..size);
        let density = rng.gen_range(0.05..0.6);
        let noise = match &source {
            FuzzSource::Experts(n) => (0..*n).map(|_| if rng.gen_bool(0.2) { 0.5 } else { rng.gen_range(0.0..0.5) }).collect(),
            FuzzSource::Class(_) => Vec::new(),
        };
        let flip_prob = if horizon == 0 { 0.0 } else { (2.0 * k as f64 / horizon as f64).min(1.0) };
        Ok(FuzzAdversary { source, k, rng, witness, density, noise, flips_left: k, flip_prob, label: false })
    }

    pub fn experts(kind: FuzzKind, n: usize, horizon: usize, k: usize, seed: u64) -> Result<Self> {
        Self::new(kind, FuzzSource::Experts(n), horizon, k, seed)
    }

    pub fn class(kind: FuzzKind, class: Arc<FiniteClass>, horizon: usize, k: usize, seed: u64) -> Result<Self> {
        Self::new(kind, FuzzSource::Class(class), horizon, k, seed)
    }

    pub fn witness(&self) -> usize {
        self.witness
    }
}

impl Adversary for FuzzAdversary {
    fn domain(&self) -> Domain {
        match &self.source {
            FuzzSource::Experts(n) => Domain::Experts(*n),
            FuzzSource::Class(c) => Domain::Class(c.clone()),
        }
    }

    fn realizability(&self) -> usize {
        self.k
    }

    fn instance(&mut self, _t: usize) -> Result<Instance> {
        let (instance, truth) = match &self.source {
            FuzzSource::Experts(n) => {
                let truth = self.rng.gen_bool(self.density);
                let mut v = bitvec![0; *n];
                for j in 0..*n {
                    let vote = if j == self.witness { truth } else { truth ^ self.rng.gen_bool(self.noise[j]) };
                    v.set(j, vote);
                }
                (Instance::Votes(v), truth)
            }
            FuzzSource::Class(c) => {
                let x = self.rng.gen_range(0..c.domain_size());
                (Instance::Point(x), c.get(self.witness, x))
            }
        };
        let flip = self.flips_left > 0 && self.rng.gen_bool(self.flip_prob);
        if flip {
            self.flips_left -= 1;
        }
        self.label = truth ^ flip;
        Ok(instance)
    }

    fn respond(&mut self, _t: usize, _prediction: bool) -> Result<Response> {
        Ok(Response::Label(self.label))
    }

    fn finalize(&mut self) -> Result<Finalization> {
        Ok(Finalization { labels: Vec::new(), witness: self.witness })
    }
}
