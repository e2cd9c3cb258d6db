//! Exact game values at tiny scale.
//!
//! The adversary picks an instance, the learner answers, and a label is
//! committed at once only when the learner predicted 1. Labels of rounds
//! answered with 0 are chosen after the last round, subject to some hypothesis
//! disagreeing with at most `k` labels overall. Against a deterministic learner
//! this adaptive game has the same value as the worst labelled sequence.
//!
//! The memoised evaluator keeps, per hypothesis, its disagreements on committed
//! rounds and its count of ones on deferred rounds: for a fixed witness the best
//! completion labels its ones 1 and then spends the leftover budget flipping
//! zeros, so these counts determine the terminal value. The plain evaluator
//! keeps the deferred instances themselves and tries every completion.

use std::collections::HashMap;

use super::class::{bit, FiniteClass};
use crate::error::{Error, Result};
use crate::game::{Instance, Learner};

const NEG: i32 = -1_000_000;

struct Work {
    used: u64,
    max: u64,
}

impl Work {
    fn charge(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.max {
            Err(Error::Budget(format!("oracle exceeded {} nodes", self.max)))
        } else {
            Ok(())
        }
    }
}

fn terminal(committed: &[u8], ones: &[u8], deferred: u8, k: u8) -> i32 {
    committed
        .iter()
        .zip(ones)
        .filter(|(&c, _)| c <= k)
        .map(|(&c, &o)| o as i32 + (k - c).min(deferred - o) as i32)
        .max()
        .unwrap_or(NEG)
}

fn check_sizes(class: &FiniteClass, horizon: usize, k: usize) -> Result<()> {
    if horizon > 60 || k > 60 || class.len() > 64 {
        return Err(Error::Budget("oracle supports at most 60 rounds, budget 60 and 64 hypotheses".into()));
    }
    Ok(())
}

struct MemoOracle<'a> {
    class: &'a FiniteClass,
    k: u8,
    memo: HashMap<(usize, Vec<u8>, Vec<u8>, u8), i32>,
    work: Work,
}

impl MemoOracle<'_> {
    fn value(&mut self, rounds: usize, committed: &[u8], ones: &[u8], deferred: u8) -> Result<i32> {
        if rounds == 0 {
            return Ok(terminal(committed, ones, deferred, self.k));
        }
        let key = (rounds, committed.to_vec(), ones.to_vec(), deferred);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.work.charge(1)?;
        let rows = self.class.rows();
        let mut best = NEG;
        for x in 0..self.class.domain_size() {
            let mut on_one = NEG;
            for y in [false, true] {
                let next: Vec<u8> = committed
                    .iter()
                    .zip(rows)
                    .map(|(&c, &r)| (c + (bit(r, x) != y) as u8).min(self.k + 1))
                    .collect();
                if next.iter().all(|&c| c > self.k) {
                    continue;
                }
                let v = self.value(rounds - 1, &next, ones, deferred)?;
                if v >= 0 {
                    on_one = on_one.max(v + (!y) as i32);
                }
            }
            let next_ones: Vec<u8> = ones.iter().zip(rows).map(|(&o, &r)| o + bit(r, x) as u8).collect();
            let on_zero = self.value(rounds - 1, committed, &next_ones, deferred + 1)?;
            best = best.max(on_one.min(on_zero));
        }
        self.memo.insert(key, best);
        Ok(best)
    }
}

/// Exact minimax number of mistakes over deterministic learners and
/// `k`-realizable sequences of length `horizon`, memoised.
pub fn minimax_oracle(class: &FiniteClass, horizon: usize, k: usize, max_nodes: u64) -> Result<u32> {
    check_sizes(class, horizon, k)?;
    let n = class.len();
    let mut o = MemoOracle { class, k: k as u8, memo: HashMap::new(), work: Work { used: 0, max: max_nodes } };
    let v = o.value(horizon, &vec![0; n], &vec![0; n], 0)?;
    Ok(v.max(0) as u32)
}

struct PlainOracle<'a> {
    class: &'a FiniteClass,
    k: usize,
    work: Work,
}

impl PlainOracle<'_> {
    fn disagreements(&self, h: u128, seq: &[(usize, bool)]) -> usize {
        seq.iter().filter(|&&(x, y)| bit(h, x) != y).count()
    }

    /// Most ones over completions of `deferred` keeping some hypothesis within
    /// budget, or `NEG` when none exists.
    fn completion(&mut self, committed: &[(usize, bool)], deferred: &[usize]) -> Result<i32> {
        self.work.charge(1u64 << deferred.len())?;
        let mut best = NEG;
        for labels in 0u32..(1u32 << deferred.len()) {
            let ones = labels.count_ones() as i32;
            if ones <= best {
                continue;
            }
            let ok = self.class.rows().iter().any(|&h| {
                let dis = self.disagreements(h, committed)
                    + deferred.iter().enumerate().filter(|&(i, &x)| bit(h, x) != ((labels >> i) & 1 == 1)).count();
                dis <= self.k
            });
            if ok {
                best = ones;
            }
        }
        Ok(best)
    }

    fn value(&mut self, rounds: usize, committed: &mut Vec<(usize, bool)>, deferred: &mut Vec<usize>) -> Result<i32> {
        if rounds == 0 {
            return self.completion(committed, deferred);
        }
        self.work.charge(1)?;
        let mut best = NEG;
        for x in 0..self.class.domain_size() {
            let mut on_one = NEG;
            for y in [false, true] {
                committed.push((x, y));
                if self.completion(committed, deferred)? >= 0 {
                    let v = self.value(rounds - 1, committed, deferred)?;
                    on_one = on_one.max(v + (!y) as i32);
                }
                committed.pop();
            }
            deferred.push(x);
            let on_zero = self.value(rounds - 1, committed, deferred)?;
            deferred.pop();
            best = best.max(on_one.min(on_zero));
        }
        Ok(best)
    }
}

/// Same value as [`minimax_oracle`] by unmemoised recursion over explicit
/// deferred instances with brute-force completion.
pub fn minimax_oracle_plain(class: &FiniteClass, horizon: usize, k: usize, max_nodes: u64) -> Result<u32> {
    check_sizes(class, horizon, k)?;
    let mut o = PlainOracle { class, k, work: Work { used: 0, max: max_nodes } };
    let v = o.value(horizon, &mut Vec::new(), &mut Vec::new())?;
    Ok(v.max(0) as u32)
}

/// Largest number of mistakes a deterministic learner makes on any
/// `k`-realizable sequence of length `horizon` over the class domain.
///
/// The learner sees domain-point instances.
pub fn learner_worst_case<L: Learner + Clone>(
    learner: &L,
    class: &FiniteClass,
    horizon: usize,
    k: usize,
    max_nodes: u64,
) -> Result<u32> {
    check_sizes(class, horizon, k)?;
    struct Search<'a> {
        class: &'a FiniteClass,
        k: u8,
        work: Work,
    }
    impl Search<'_> {
        fn value<L: Learner + Clone>(
            &mut self,
            learner: &L,
            rounds: usize,
            committed: &[u8],
            ones: &[u8],
            deferred: u8,
        ) -> Result<i32> {
            if rounds == 0 {
                return Ok(terminal(committed, ones, deferred, self.k));
            }
            self.work.charge(1)?;
            let rows = self.class.rows();
            let mut best = NEG;
            for x in 0..self.class.domain_size() {
                let inst = Instance::Point(x);
                let mut l = learner.clone();
                let v = if l.predict(&inst)? {
                    let mut on_one = NEG;
                    for y in [false, true] {
                        let next: Vec<u8> = committed
                            .iter()
                            .zip(rows)
                            .map(|(&c, &r)| (c + (bit(r, x) != y) as u8).min(self.k + 1))
                            .collect();
                        if next.iter().all(|&c| c > self.k) {
                            continue;
                        }
                        let mut l2 = l.clone();
                        l2.observe(&inst, true, Some(y))?;
                        let v = self.value(&l2, rounds - 1, &next, ones, deferred)?;
                        if v >= 0 {
                            on_one = on_one.max(v + (!y) as i32);
                        }
                    }
                    on_one
                } else {
                    l.observe(&inst, false, None)?;
                    let next_ones: Vec<u8> = ones.iter().zip(rows).map(|(&o, &r)| o + bit(r, x) as u8).collect();
                    self.value(&l, rounds - 1, committed, &next_ones, deferred + 1)?
                };
                best = best.max(v);
            }
            Ok(best)
        }
    }
    let n = class.len();
    let mut s = Search { class, k: k as u8, work: Work { used: 0, max: max_nodes } };
    let v = s.value(learner, horizon, &vec![0; n], &vec![0; n], 0)?;
    Ok(v.max(0) as u32)
}
