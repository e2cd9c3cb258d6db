//! Sweep configuration files.
//!
//! ```toml
//! [sweep]
//! learner = "realizable-expat"
//! adversary = "phase"
//! output = "results.csv"
//!
//! [grid]
//! n = [16, 32]
//! T = [16, 32]
//! k = [0]
//! seeds = [0, 1, 2]
//! n_equals_t = false
//!
//! [overrides]
//! eta = 0.25
//! threshold = 64.0
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnerId {
    RealizableExpat,
    Expat,
    DtExpat,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdversaryId {
    Phase,
    AgnosticPhase,
    Fuzz,
}

impl LearnerId {
    pub const ALL: [LearnerId; 4] = [LearnerId::RealizableExpat, LearnerId::Expat, LearnerId::DtExpat, LearnerId::Greedy];

    pub fn as_str(self) -> &'static str {
        match self {
            LearnerId::RealizableExpat => "realizable-expat",
            LearnerId::Expat => "expat",
            LearnerId::DtExpat => "dt-expat",
            LearnerId::Greedy => "greedy",
        }
    }
}

impl AdversaryId {
    pub const ALL: [AdversaryId; 3] = [AdversaryId::Phase, AdversaryId::AgnosticPhase, AdversaryId::Fuzz];

    pub fn as_str(self) -> &'static str {
        match self {
            AdversaryId::Phase => "phase",
            AdversaryId::AgnosticPhase => "agnostic-phase",
            AdversaryId::Fuzz => "fuzz",
        }
    }
}

impl fmt::Display for LearnerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for AdversaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LearnerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown learner {s:?}")))
    }
}

impl FromStr for AdversaryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown adversary {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub learner: LearnerId,
    pub adversary: AdversaryId,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default, rename = "T", alias = "t")]
    pub horizon: Vec<usize>,
    #[serde(default = "default_k")]
    pub k: Vec<usize>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    /// Ignore `n` and use `n = T` in every cell.
    #[serde(default)]
    pub n_equals_t: bool,
}

fn default_k() -> Vec<usize> {
    vec![0]
}

/// Learner parameters replacing the default tuning.
#[derive(Clone, Copy, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub eta: Option<f64>,
    pub threshold: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub sweep: SweepSection,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub overrides: Overrides,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1);
            Error::Parse { line, msg: e.message().to_string() }
        })
    }

    /// Every `(n, T, k, seed)` cell in key order.
    pub fn cells(&self) -> Vec<(usize, usize, usize, u64)> {
        let g = &self.grid;
        let mut out = Vec::new();
        let ns: Vec<Option<usize>> = if g.n_equals_t { vec![None] } else { g.n.iter().copied().map(Some).collect() };
        for &n in &ns {
            for &t in &g.horizon {
                for &k in &g.k {
                    for &s in &g.seeds {
                        out.push((n.unwrap_or(t), t, k, s));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
