//! Seeded random classes and an audit of the properties the version-space
//! lower bound relies on.
//!
//! A class has `T^d` hypotheses over `T` instances, each entry 1 with
//! probability `p`. The audit checks three items:
//!
//! 1. every hypothesis predicts 1 on at least `ones_threshold` instances;
//! 2. along sampled chains `X₁ ⊂ X₂ ⊂ …` of instances taken in domain order,
//!    adding one instance keeps at least a `1 − decay` fraction of the
//!    hypotheses that predict 0 on the whole chain so far;
//! 3. the Littlestone dimension is below `10d`, when the search fits its budget.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::class::bit;
use crate::combinatorics::{littlestone_dim, FiniteClass, SearchBudget, MAX_DOMAIN};
use crate::error::{param, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomClassSpec {
    pub d: u32,
    /// Horizon, equal to the domain size.
    pub horizon: usize,
    pub c: f64,
    /// Entry probability; `None` uses [`RandomClassSpec::default_probability`].
    pub p: Option<f64>,
    pub seed: u64,
    pub max_hypotheses: usize,
}

impl RandomClassSpec {
    pub fn new(d: u32, horizon: usize, c: f64, seed: u64) -> Self {
        RandomClassSpec { d, horizon, c, p: None, seed, max_hypotheses: 1 << 22 }
    }

    /// `min(1/2, c·√(d·log₂T / T))`.
    pub fn default_probability(&self) -> f64 {
        let t = self.horizon as f64;
        (self.c * (self.d as f64 * t.log2() / t).sqrt()).min(0.5)
    }

    pub fn probability(&self) -> f64 {
        self.p.unwrap_or_else(|| self.default_probability())
    }

    /// `T^d`, or `None` on overflow.
    pub fn size(&self) -> Option<usize> {
        self.horizon.checked_pow(self.d)
    }

    /// Comment line recorded in sampled class files.
    pub fn header(&self) -> String {
        format!("seed={} p={}", self.seed, self.probability())
    }
}

/// Samples the class and removes repeated rows.
pub fn sample_random_class(spec: &RandomClassSpec) -> Result<FiniteClass> {
    if spec.horizon < 2 || spec.horizon > MAX_DOMAIN {
        return param(format!("horizon must be in 2..={MAX_DOMAIN}, got {}", spec.horizon));
    }
    let p = spec.probability();
    if !(p > 0.0 && p <= 1.0) {
        return param(format!("entry probability must be in (0, 1], got {p}"));
    }
    let n = match spec.size() {
        Some(n) if n <= spec.max_hypotheses => n,
        _ => {
            return Err(Error::Budget(format!(
                "{}^{} hypotheses exceed the limit of {}",
                spec.horizon, spec.d, spec.max_hypotheses
            )))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = (0..n)
        .map(|_| (0..spec.horizon).fold(0u128, |acc, x| acc | ((rng.gen_bool(p) as u128) << x)))
        .collect();
    FiniteClass::dedup(spec.horizon, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for ItemStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ItemStatus::Pass => "pass",
            ItemStatus::Fail => "fail",
            ItemStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub d: u32,
    pub ones_threshold: f64,
    pub decay: f64,
    /// Number of sampled restriction chains.
    pub chains: usize,
    pub seed: u64,
    pub ldim_budget: SearchBudget,
}

impl VerifyOptions {
    /// Thresholds `√(dT log₂T)` and `1000√(d log₂T / T)`, both scaled by
    /// `c/100`.
    pub fn scaled(d: u32, horizon: usize, c: f64) -> Self {
        let (t, df) = (horizon as f64, d as f64);
        VerifyOptions {
            d,
            ones_threshold: (df * t * t.log2()).sqrt() * c / 100.0,
            decay: 1000.0 * (df * t.log2() / t).sqrt() * c / 100.0,
            chains: 8,
            seed: 0,
            ldim_budget: SearchBudget::new(50_000_000),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomClassReport {
    pub ones: ItemStatus,
    pub min_ones: u32,
    pub restriction: ItemStatus,
    /// Smallest kept fraction seen on any chain step.
    pub worst_ratio: f64,
    pub steps_checked: usize,
    pub ldim: ItemStatus,
    pub ldim_value: Option<u32>,
}

impl RandomClassReport {
    /// No item failed.
    pub fn passed(&self) -> bool {
        ![self.ones, self.restriction, self.ldim].contains(&ItemStatus::Fail)
    }
}

impl fmt::Display for RandomClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "item 1 (ones per hypothesis): {} (min {})", self.ones, self.min_ones)?;
        writeln!(
            f,
            "item 2 (restriction decay): {} (worst kept fraction {:.6} over {} steps)",
            self.restriction, self.worst_ratio, self.steps_checked
        )?;
        match self.ldim_value {
            Some(l) => write!(f, "item 3 (Littlestone dimension): {} (L = {l})", self.ldim),
            None => write!(f, "item 3 (Littlestone dimension): {} (search budget exceeded)", self.ldim),
        }
    }
}

pub fn verify_random_class(class: &FiniteClass, opts: &VerifyOptions) -> RandomClassReport {
    let min_ones = class.rows().iter().map(|r| r.count_ones()).min().unwrap_or(0);
    let ones = if min_ones as f64 >= opts.ones_threshold { ItemStatus::Pass } else { ItemStatus::Fail };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst_ratio = 1.0f64;
    let mut steps_checked = 0;
    for _ in 0..opts.chains {
        let mut zeros: Vec<u128> = class.rows().to_vec();
        for x in 0..class.domain_size() {
            if zeros.is_empty() {
                break;
            }
            if !rng.gen_bool(0.5) {
                continue;
            }
            let before = zeros.len();
            zeros.retain(|&r| !bit(r, x));
            worst_ratio = worst_ratio.min(zeros.len() as f64 / before as f64);
            steps_checked += 1;
        }
    }
    let restriction = if steps_checked == 0 {
        ItemStatus::Skipped
    } else if worst_ratio >= 1.0 - opts.decay {
        ItemStatus::Pass
    } else {
        ItemStatus::Fail
    };

    let (ldim, ldim_value) = match littlestone_dim(class, opts.ldim_budget) {
        Ok(l) if l < 10 * opts.d => (ItemStatus::Pass, Some(l)),
        Ok(l) => (ItemStatus::Fail, Some(l)),
        Err(_) => (ItemStatus::Skipped, None),
    };
    RandomClassReport { ones, min_ones, restriction, worst_ratio, steps_checked, ldim, ldim_value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_entries_collapse() {
        let mut s = RandomClassSpec::new(2, 8, 1.0, 1);
        s.p = Some(1.0);
        let h = sample_random_class(&s).unwrap();
        assert_eq!(h.len(), 1);
        let mut o = VerifyOptions::scaled(2, 8, 1.0);
        o.ones_threshold = 8.0;
        assert_eq!(verify_random_class(&h, &o).ones, ItemStatus::Pass);
    }

    #[test]
    fn zero_threshold_is_vacuous() {
        let h = FiniteClass::zero(4).unwrap();
        let mut o = VerifyOptions::scaled(1, 4, 1.0);
        o.ones_threshold = 0.0;
        assert_eq!(verify_random_class(&h, &o).ones, ItemStatus::Pass);
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = RandomClassSpec::new(2, 16, 1.0, 3);
        assert_eq!(sample_random_class(&s).unwrap(), sample_random_class(&s).unwrap());
        let mut other = s;
        other.seed = 4;
        assert_ne!(sample_random_class(&s).unwrap(), sample_random_class(&other).unwrap());
    }

    #[test]
    fn budget_and_parameter_errors() {
        let mut s = RandomClassSpec::new(3, 128, 1.0, 0);
        s.max_hypotheses = 1000;
        assert!(matches!(sample_random_class(&s), Err(Error::Budget(_))));
        let mut s = RandomClassSpec::new(1, 8, 1.0, 0);
        s.p = Some(0.0);
        assert!(sample_random_class(&s).is_err());
        assert!(sample_random_class(&RandomClassSpec::new(1, 1, 1.0, 0)).is_err());
    }

    #[test]
    fn default_probability_is_clamped() {
        assert_eq!(RandomClassSpec::new(2, 64, 100.0, 0).default_probability(), 0.5);
        let p = RandomClassSpec::new(2, 64, 1.0, 0).default_probability();
        assert!((p - (12.0f64 / 64.0).sqrt()).abs() < 1e-15);
    }
}
