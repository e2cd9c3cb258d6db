//! Dimension reports for class files.

use std::fmt;

use crate::combinatorics::{d1_k, effective_width, littlestone_dim, Depth, FiniteClass, SearchBudget, Trichotomy, Width};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsReport {
    pub domain_size: usize,
    pub hypotheses: usize,
    /// `None` when the search ran out of budget.
    pub littlestone: Option<u32>,
    pub d1: Depth,
    pub d1_k: Vec<(u32, Depth)>,
    pub cap: u32,
    pub width: Width,
    pub label: Trichotomy,
}

/// Littlestone dimension, `D_1`, `D_1^(k)` for each requested `k`, effective
/// width at `cap` and the trichotomy label.
pub fn dims_report(class: &FiniteClass, ks: &[u32], cap: u32, budget: SearchBudget) -> Result<DimsReport> {
    let littlestone = match littlestone_dim(class, budget) {
        Ok(l) => Some(l),
        Err(Error::Budget(_)) => None,
        Err(e) => return Err(e),
    };
    let d1 = d1_k(class, 0, cap, budget)?;
    let d1_k = ks.iter().map(|&k| Ok((k, d1_k(class, k, cap, budget)?))).collect::<Result<Vec<_>>>()?;
    let width = effective_width(class, cap, budget)?;
    Ok(DimsReport {
        domain_size: class.domain_size(),
        hypotheses: class.len(),
        littlestone,
        d1,
        d1_k,
        cap,
        width,
        label: Trichotomy::from_width(width),
    })
}

impl fmt::Display for DimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain size: {}", self.domain_size)?;
        writeln!(f, "hypotheses: {}", self.hypotheses)?;
        match self.littlestone {
            Some(l) => writeln!(f, "littlestone: {l}")?,
            None => writeln!(f, "littlestone: budget exceeded")?,
        }
        writeln!(f, "d1: {}", self.d1)?;
        for (k, d) in &self.d1_k {
            writeln!(f, "d1_k[{k}]: {d}")?;
        }
        writeln!(f, "effective width (cap {}): {}", self.cap, self.width)?;
        write!(f, "label: {}", self.label)
    }
}
