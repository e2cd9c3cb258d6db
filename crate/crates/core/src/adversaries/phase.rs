//! Phase adversaries over experts.
//!
//! [`PhaseAdversary`] keeps a set of live experts split into near-equal
//! blocks and lets the blocks vote 1 in turn. Labels of rounds predicted 0 are
//! deferred; a prediction of 1 is answered 0 and eliminates the voting block,
//! which ends the phase. Once fewer live experts remain than there are blocks,
//! every remaining round shows all-zero votes labelled 0. The smallest
//! surviving expert labels the deferred rounds.
//!
//! [`AgnosticPhaseAdversary`] runs `⌊√(T/k)⌋` phases of `⌊√(Tk)⌋` rounds. In
//! phase `i` only expert `i` votes 1. A prediction of 1 is answered 0. The
//! first phase with fewer than `k` predictions of 1 has its deferred labels set
//! to 1 and names expert `i`; otherwise the all-zero expert after the phase
//! experts is named.

use bitvec::prelude::*;

use crate::error::{param, Result};
use crate::game::{Adversary, Domain, Finalization, Instance, Response};

#[derive(Clone, Debug)]
pub struct PhaseAdversary {
    n: usize,
    blocks: usize,
    live: Vec<usize>,
    partition: Vec<Vec<usize>>,
    active: usize,
    exhausted: bool,
    /// Active block of each round, `None` for all-zero rounds.
    voters: Vec<Option<Vec<usize>>>,
    deferred: Vec<usize>,
    phases: usize,
}

/// `max(2, ⌈√(T / log₂n)⌉)`.
pub fn phase_block_count(n: usize, horizon: usize) -> usize {
    let b = (horizon as f64 / (n as f64).log2()).sqrt().ceil() as usize;
    b.max(2)
}

fn near_equal(items: &[usize], parts: usize) -> Vec<Vec<usize>> {
    let q = items.len() / parts;
    let r = items.len() % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let len = q + (i < r) as usize;
        out.push(items[start..start + len].to_vec());
        start += len;
    }
    out
}

impl PhaseAdversary {
    pub fn new(n: usize, horizon: usize) -> Result<Self> {
        if n < 2 {
            return param(format!("phase adversary needs at least two experts, got {n}"));
        }
        if horizon == 0 {
            return param("horizon must be at least 1");
        }
        let mut a = PhaseAdversary {
            n,
            blocks: phase_block_count(n, horizon),
            live: (0..n).collect(),
            partition: Vec::new(),
            active: 0,
            exhausted: false,
            voters: Vec::with_capacity(horizon),
            deferred: Vec::new(),
            phases: 0,
        };
        a.split();
        Ok(a)
    }

    fn split(&mut self) {
        if self.live.len() >= self.blocks {
            self.partition = near_equal(&self.live, self.blocks);
            self.active = 0;
            self.phases += 1;
        } else {
            self.exhausted = true;
        }
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn live(&self) -> &[usize] {
        &self.live
    }

    /// Phases started so far.
    pub fn phases(&self) -> usize {
        self.phases
    }
}

impl Adversary for PhaseAdversary {
    fn domain(&self) -> Domain {
        Domain::Experts(self.n)
    }

    fn realizability(&self) -> usize {
        0
    }

    fn instance(&mut self, _t: usize) -> Result<Instance> {
        let mut v = bitvec![0; self.n];
        if self.exhausted {
            self.voters.push(None);
        } else {
            let block = &self.partition[self.active];
            for &j in block {
                v.set(j, true);
            }
            self.voters.push(Some(block.clone()));
        }
        Ok(Instance::Votes(v))
    }

    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response> {
        if self.voters[t - 1].is_none() {
            return Ok(Response::Label(false));
        }
        if prediction {
            let gone = std::mem::take(&mut self.partition[self.active]);
            self.live.retain(|j| gone.binary_search(j).is_err());
            self.split();
            Ok(Response::Label(false))
        } else {
            self.deferred.push(t);
            self.active = (self.active + 1) % self.blocks;
            Ok(Response::Defer)
        }
    }

    fn finalize(&mut self) -> Result<Finalization> {
        let witness = self.live[0];
        let labels = self
            .deferred
            .iter()
            .map(|&t| (t, self.voters[t - 1].as_ref().is_some_and(|b| b.binary_search(&witness).is_ok())))
            .collect();
        Ok(Finalization { labels, witness })
    }
}

#[derive(Clone, Debug)]
pub struct AgnosticPhaseAdversary {
    n: usize,
    k: usize,
    phases: usize,
    phase_len: usize,
    ones: usize,
    locked: Option<usize>,
    /// Deferred rounds with their phase, `None` outside all phases.
    deferred: Vec<(usize, Option<usize>)>,
}

impl AgnosticPhaseAdversary {
    pub fn new(n: usize, horizon: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return param("budget must be at least 1; use the realizable phase adversary for k = 0");
        }
        if k > horizon {
            return param(format!("budget {k} exceeds horizon {horizon}"));
        }
        let phases = (horizon as f64 / k as f64).sqrt().floor() as usize;
        let phase_len = (horizon as f64 * k as f64).sqrt().floor() as usize;
        if n <= phases {
            return param(format!("{phases} phases need at least {} experts, got {n}", phases + 1));
        }
        Ok(AgnosticPhaseAdversary { n, k, phases, phase_len, ones: 0, locked: None, deferred: Vec::new() })
    }

    pub fn phases(&self) -> usize {
        self.phases
    }

    pub fn phase_len(&self) -> usize {
        self.phase_len
    }

    /// Phase whose expert is certified, once fixed.
    pub fn locked(&self) -> Option<usize> {
        self.locked
    }

    fn phase_of(&self, t: usize) -> Option<usize> {
        let i = (t - 1) / self.phase_len;
        (i < self.phases).then_some(i)
    }
}

impl Adversary for AgnosticPhaseAdversary {
    fn domain(&self) -> Domain {
        Domain::Experts(self.n)
    }

    fn realizability(&self) -> usize {
        self.k
    }

    fn instance(&mut self, t: usize) -> Result<Instance> {
        let mut v = bitvec![0; self.n];
        if let Some(i) = self.phase_of(t) {
            v.set(i, true);
        }
        Ok(Instance::Votes(v))
    }

    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response> {
        let phase = self.phase_of(t);
        let out = if prediction {
            self.ones += 1;
            Response::Label(false)
        } else {
            self.deferred.push((t, phase));
            Response::Defer
        };
        if let Some(i) = phase {
            if t % self.phase_len == 0 {
                if self.locked.is_none() && self.ones < self.k {
                    self.locked = Some(i);
                }
                self.ones = 0;
            }
        }
        Ok(out)
    }

    fn finalize(&mut self) -> Result<Finalization> {
        let labels = self.deferred.iter().map(|&(t, p)| (t, p.is_some() && p == self.locked)).collect();
        Ok(Finalization { labels, witness: self.locked.unwrap_or(self.phases) })
    }
}
