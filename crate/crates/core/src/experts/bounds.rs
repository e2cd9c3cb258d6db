//! Mistake bounds with their explicit constants.

use super::state::Params;

/// Upper bounds on false negatives and false positives for one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MistakeBounds {
    pub false_negatives: f64,
    pub false_positives: f64,
}

impl MistakeBounds {
    pub fn total(&self) -> f64 {
        self.false_negatives + self.false_positives
    }

    pub fn admits(&self, false_negatives: usize, false_positives: usize) -> bool {
        false_negatives as f64 <= self.false_negatives && false_positives as f64 <= self.false_positives
    }
}

/// Realizable learner: `M₋ ≤ log₂L/η + 1`, `M₊ ≤ 6ηT`.
pub fn realizable_bounds(p: &Params, horizon: usize) -> MistakeBounds {
    MistakeBounds {
        false_negatives: p.threshold.log2() / p.eta + 1.0,
        false_positives: 6.0 * p.eta * horizon as f64,
    }
}

/// Agnostic learner: `M₋ ≤ log₂L/η + k + 1`, `M₊ ≤ 200ηT`.
pub fn agnostic_bounds(p: &Params, horizon: usize) -> MistakeBounds {
    MistakeBounds {
        false_negatives: p.threshold.log2() / p.eta + p.budget as f64 + 1.0,
        false_positives: 200.0 * p.eta * horizon as f64,
    }
}

/// `3ηTL`, the ceiling of the realizable bucket sum.
pub fn realizable_helper_ceiling(p: &Params, horizon: usize) -> f64 {
    3.0 * p.eta * horizon as f64 * p.threshold
}

/// `200ηLT`, the ceiling of the agnostic bucket sum.
pub fn agnostic_helper_ceiling(p: &Params, horizon: usize) -> f64 {
    200.0 * p.eta * p.threshold * horizon as f64
}

/// `L·T`, the ceiling of the realizable weighted distance.
pub fn twdg_ceiling(p: &Params, horizon: usize) -> f64 {
    p.threshold * horizon as f64
}

/// Mistakes the realizable phase adversary forces: `√(T log₂n)/8`.
pub fn phase_floor(n: usize, horizon: usize) -> f64 {
    (horizon as f64 * (n as f64).log2()).sqrt() / 8.0
}

/// Mistakes the agnostic phase adversary forces:
/// `min(√(Tk) − k, ⌊√(T/k)⌋·k)`.
pub fn agnostic_phase_floor(horizon: usize, k: usize) -> f64 {
    let (t, kf) = (horizon as f64, k as f64);
    ((t * kf).sqrt() - kf).min((t / kf).sqrt().floor() * kf)
}

/// Allowance for the doubling learner relative to the tuned one:
/// `40·M + 40·√(T·max(k,1))`.
pub fn doubling_allowance(tuned_mistakes: usize, horizon: usize, k: usize) -> f64 {
    40.0 * tuned_mistakes as f64 + 40.0 * (horizon as f64 * k.max(1) as f64).sqrt()
}
