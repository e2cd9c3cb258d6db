//! Replay diagnostics: total weighted distance gained and the per-bucket
//! counts of exit distances.

use super::state::{ExpertLearnerState, Mode};
use crate::error::{Error, Result};
use crate::game::Transcript;

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsLedger {
    /// `Σ_{t: ŷ=0} Σ_{j live, voting 1} 2^(η d_j)`.
    pub twdg: f64,
    /// Same sum with exponent `k_j + η d_j`.
    pub tw2dg: f64,
    pub eta: f64,
    pub threshold: f64,
    pub budget: u32,
    /// Bucket `d` counts experts whose final distance `D` has `⌊η D⌋ = d`.
    pub buckets: Vec<u64>,
    /// `agnostic_buckets[ℓ][d]` counts experts whose distance at their
    /// `(ℓ+1)`-th false positive falls in bucket `d`. Experts that made fewer
    /// false positives use their final distance.
    pub agnostic_buckets: Vec<Vec<u64>>,
}

impl DiagnosticsLedger {
    /// `Σ_d n_d 2^d`.
    pub fn helper_sum(&self) -> f64 {
        self.buckets.iter().enumerate().map(|(d, &c)| c as f64 * 2f64.powi(d as i32)).sum()
    }

    /// `Σ_ℓ Σ_d n_d^(ℓ) 2^(k-ℓ+d)`.
    pub fn agnostic_helper_sum(&self) -> f64 {
        let k = self.budget as i32;
        self.agnostic_buckets
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().enumerate().map(move |(d, &c)| c as f64 * 2f64.powi(k - l as i32 + d as i32)))
            .sum()
    }
}

fn bucket(eta: f64, distance: u32) -> usize {
    (eta * distance as f64).floor() as usize
}

fn add(buckets: &mut Vec<u64>, d: usize) {
    if buckets.len() <= d {
        buckets.resize(d + 1, 0);
    }
    buckets[d] += 1;
}

/// Replays `tr` through `fresh`, which must be the learner's initial state,
/// and accumulates the ledger. Fails if a replayed prediction differs from the
/// transcript.
pub fn diagnostics(tr: &Transcript, mut fresh: ExpertLearnerState) -> Result<DiagnosticsLedger> {
    let params = fresh.params();
    let n = fresh.n();
    let mut twdg = 0.0;
    let mut tw2dg = 0.0;
    let mut fp_distances: Vec<Vec<u32>> = vec![Vec::new(); n];
    for r in &tr.rounds {
        let votes = r.instance.votes()?;
        let p = fresh.predict_votes(votes)?;
        if p != r.prediction {
            return Err(Error::Mismatch(format!("round {}: replay predicts {}, transcript has {}", r.t, p as u8, r.prediction as u8)));
        }
        let feedback = if p {
            Some(r.label.ok_or_else(|| Error::Protocol(format!("round {} has no label", r.t)))?)
        } else {
            None
        };
        if p {
            if feedback == Some(false) {
                for j in fresh.live_voters(votes).collect::<Vec<_>>() {
                    fp_distances[j].push(fresh.distance(j));
                }
            }
        } else {
            for j in fresh.live_voters(votes) {
                twdg += (params.eta * fresh.distance(j) as f64).exp2();
                tw2dg += fresh.exponent(j).exp2();
            }
        }
        fresh.update(votes, p, feedback)?;
    }
    let mut buckets = Vec::new();
    let levels = match fresh.mode() {
        Mode::Realizable => 1,
        Mode::Agnostic => params.budget as usize + 1,
    };
    let mut agnostic_buckets = vec![Vec::new(); levels];
    for j in 0..n {
        let last = fresh.distance(j);
        add(&mut buckets, bucket(params.eta, last));
        for (l, row) in agnostic_buckets.iter_mut().enumerate() {
            let d = fp_distances[j].get(l).copied().unwrap_or(last);
            add(row, bucket(params.eta, d));
        }
    }
    Ok(DiagnosticsLedger {
        twdg,
        tw2dg,
        eta: params.eta,
        threshold: params.threshold,
        budget: params.budget,
        buckets,
        agnostic_buckets,
    })
}
