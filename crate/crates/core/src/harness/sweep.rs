//! Grid sweeps over experts games.
//!
//! Each `(n, T, k, seed)` cell plays one game. A row is within bound when the
//! learner stays inside its mistake bounds, the adversary's floor (if any) is
//! reached, and the certificate validates. Cells violating a precondition are
//! reported as skipped.

use std::io::Write;

use rayon::prelude::*;

use super::config::{AdversaryId, LearnerId, Overrides, SweepConfig};
use crate::adversaries::{AgnosticPhaseAdversary, FuzzAdversary, FuzzKind, PhaseAdversary};
use crate::error::Result;
use crate::experts::bounds::{agnostic_bounds, agnostic_phase_floor, phase_floor, realizable_bounds};
use crate::experts::{DtExpAt, ExpertLearnerState, Greedy, MistakeBounds, Mode, Params};
use crate::game::{run_game, score, verify_certificate, Adversary, Learner, MistakeReport};

pub const CSV_HEADER: [&str; 11] =
    ["learner", "adversary", "n", "T", "k", "seed", "mistakes", "false_pos", "false_neg", "bound", "within_bound"];

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Skipped(String),
    Done {
        report: MistakeReport,
        /// Upper bound of the learner, if it has one.
        bounds: Option<MistakeBounds>,
        /// Mistakes the adversary guarantees, if it is a lower-bound strategy.
        floor: Option<f64>,
        certificate_ok: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub learner: LearnerId,
    pub adversary: AdversaryId,
    pub n: usize,
    pub horizon: usize,
    pub k: usize,
    pub seed: u64,
    pub outcome: Outcome,
}

impl Row {
    /// `None` for skipped rows.
    pub fn within_bound(&self) -> Option<bool> {
        match &self.outcome {
            Outcome::Skipped(_) => None,
            Outcome::Done { report, bounds, floor, certificate_ok } => Some(
                *certificate_ok
                    && bounds.map_or(true, |b| b.admits(report.false_negatives, report.false_positives))
                    && floor.map_or(true, |f| report.total as f64 >= f),
            ),
        }
    }

    pub fn report(&self) -> Option<MistakeReport> {
        match &self.outcome {
            Outcome::Done { report, .. } => Some(*report),
            Outcome::Skipped(_) => None,
        }
    }

    fn record(&self) -> Vec<String> {
        let mut out = vec![
            self.learner.to_string(),
            self.adversary.to_string(),
            self.n.to_string(),
            self.horizon.to_string(),
            self.k.to_string(),
            self.seed.to_string(),
        ];
        match &self.outcome {
            Outcome::Skipped(_) => {
                out.extend(["", "", "", ""].map(String::from));
                out.push("skipped".into());
            }
            Outcome::Done { report, bounds, .. } => {
                out.push(report.total.to_string());
                out.push(report.false_positives.to_string());
                out.push(report.false_negatives.to_string());
                out.push(bounds.map_or_else(|| "inf".into(), |b| format!("{:.6}", b.total())));
                out.push(if self.within_bound() == Some(true) { "1" } else { "0" }.into());
            }
        }
        out
    }
}

fn skip(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Skipped(reason.into()))
}

fn params_with(base: Params, o: &Overrides) -> Params {
    Params { eta: o.eta.unwrap_or(base.eta), threshold: o.threshold.unwrap_or(base.threshold), budget: base.budget }
}

/// Plays one cell.
pub fn run_cell(
    learner: LearnerId,
    adversary: AdversaryId,
    n: usize,
    horizon: usize,
    k: usize,
    seed: u64,
    overrides: &Overrides,
) -> Result<Outcome> {
    if horizon == 0 {
        return skip("horizon must be at least 1");
    }
    if k > horizon {
        return skip(format!("k = {k} exceeds T = {horizon}"));
    }
    let (mut adv, floor): (Box<dyn Adversary>, Option<f64>) = match adversary {
        AdversaryId::Phase => {
            if n < 2 {
                return skip("phase adversary needs n ≥ 2");
            }
            if k != 0 {
                return skip("phase adversary is realizable; k must be 0");
            }
            let floor = (horizon <= n && horizon >= 2).then(|| phase_floor(n, horizon));
            (Box::new(PhaseAdversary::new(n, horizon)?), floor)
        }
        AdversaryId::AgnosticPhase => {
            if k == 0 {
                return skip("agnostic phase adversary needs k ≥ 1");
            }
            match AgnosticPhaseAdversary::new(n, horizon, k) {
                Ok(a) => (Box::new(a), (horizon <= n).then(|| agnostic_phase_floor(horizon, k))),
                Err(e) => return skip(e.to_string()),
            }
        }
        AdversaryId::Fuzz => {
            if n == 0 {
                return skip("fuzzer needs n ≥ 1");
            }
            let kind = if k == 0 { FuzzKind::Realizable } else { FuzzKind::Agnostic };
            (Box::new(FuzzAdversary::experts(kind, n, horizon, k, seed)?), None)
        }
    };
    let (mut l, bounds): (Box<dyn Learner>, Option<MistakeBounds>) = match learner {
        LearnerId::RealizableExpat => {
            if n < 2 || horizon < 2 {
                return skip("realizable learner needs n, T ≥ 2");
            }
            if k != 0 {
                return skip("realizable learner needs k = 0");
            }
            let p = params_with(Params::realizable(n, horizon)?, overrides);
            if p.validate().is_err() {
                return skip("overridden parameters are invalid");
            }
            (Box::new(ExpertLearnerState::new(n, p, Mode::Realizable)?), Some(realizable_bounds(&p, horizon)))
        }
        LearnerId::Expat => {
            if n < 2 || horizon < 2 {
                return skip("agnostic learner needs n, T ≥ 2");
            }
            let p = params_with(Params::agnostic(n, horizon, k as u32)?, overrides);
            if p.validate().is_err() {
                return skip("overridden parameters are invalid");
            }
            let bounds = p.is_valid_for(n, horizon).then(|| agnostic_bounds(&p, horizon));
            (Box::new(ExpertLearnerState::new(n, p, Mode::Agnostic)?), bounds)
        }
        LearnerId::DtExpat => {
            if n < 2 {
                return skip("doubling learner needs n ≥ 2");
            }
            (Box::new(DtExpAt::new(n)?), None)
        }
        LearnerId::Greedy => (Box::new(Greedy::new(n)), None),
    };
    let tr = run_game(&mut l, &mut adv, horizon)?;
    Ok(Outcome::Done { report: score(&tr)?, bounds, floor, certificate_ok: verify_certificate(&tr)? })
}

/// All rows of a sweep, ordered by `(n, T, k, seed)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<Row>> {
    let (learner, adversary) = (cfg.sweep.learner, cfg.sweep.adversary);
    cfg.cells()
        .into_par_iter()
        .map(|(n, horizon, k, seed)| {
            let outcome = run_cell(learner, adversary, n, horizon, k, seed, &cfg.overrides)?;
            Ok(Row { learner, adversary, n, horizon, k, seed, outcome })
        })
        .collect()
}

pub fn write_rows<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SweepConfig {
        SweepConfig::parse(text).unwrap()
    }

    #[test]
    fn realizable_phase_rows_are_within_bound() {
        let c = cfg("[sweep]\nlearner = \"realizable-expat\"\nadversary = \"phase\"\n\
                     [grid]\nT = [16, 32]\nseeds = [0, 1, 2]\nn_equals_t = true\n");
        let rows = run_sweep(&c).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.within_bound() == Some(true)));
    }

    #[test]
    fn empty_grid_writes_header_only() {
        let c = cfg("[sweep]\nlearner = \"expat\"\nadversary = \"fuzz\"\n");
        let rows = run_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "learner,adversary,n,T,k,seed,mistakes,false_pos,false_neg,bound,within_bound\n");
    }

    #[test]
    fn k_above_horizon_is_skipped() {
        let c = cfg("[sweep]\nlearner = \"expat\"\nadversary = \"fuzz\"\n[grid]\nn = [4]\nT = [4]\nk = [5]\nseeds = [0]\n");
        let rows = run_sweep(&c).unwrap();
        assert_eq!(rows[0].within_bound(), None);
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("expat,fuzz,4,4,5,0,,,,,skipped\n"));
    }

    #[test]
    fn reruns_are_identical() {
        let c = cfg("[sweep]\nlearner = \"dt-expat\"\nadversary = \"fuzz\"\n[grid]\nn = [8, 16]\nT = [64]\nk = [0, 2]\nseeds = [3, 4]\n");
        let render = |rows: &[Row]| {
            let mut buf = Vec::new();
            write_rows(rows, &mut buf).unwrap();
            buf
        };
        assert_eq!(render(&run_sweep(&c).unwrap()), render(&run_sweep(&c).unwrap()));
    }
}
