//! The repeated prediction game with apple-tasting feedback.
//!
//! Each round the adversary emits an instance, the learner predicts a bit, and
//! the label is shown to the learner only if it predicted 1. Adversaries may
//! hold back the label of a round predicted 0 and commit it when the game
//! ends; [`run_game`] refuses to return a transcript with missing labels.

use std::io::Write;
use std::sync::Arc;

use bitvec::prelude::*;

use crate::combinatorics::FiniteClass;
use crate::error::{Error, Result};

/// What the learner sees in one round.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    /// One prediction bit per expert.
    Votes(BitVec),
    /// Index of a domain instance of a hypothesis class.
    Point(usize),
}

impl Instance {
    pub fn votes(&self) -> Result<&BitSlice> {
        match self {
            Instance::Votes(v) => Ok(v),
            Instance::Point(x) => Err(Error::Domain(format!("expected expert votes, got domain instance {x}"))),
        }
    }

    pub fn point(&self) -> Result<usize> {
        match self {
            Instance::Point(x) => Ok(*x),
            Instance::Votes(_) => Err(Error::Domain("expected a domain instance, got expert votes".into())),
        }
    }

    /// Vote vectors as a `0`/`1` string, domain instances as their index.
    pub fn render(&self) -> String {
        match self {
            Instance::Votes(v) => v.iter().map(|b| if *b { '1' } else { '0' }).collect(),
            Instance::Point(x) => x.to_string(),
        }
    }
}

/// The set of instances an adversary may emit, together with the
/// hypotheses (or experts) a certificate may name.
#[derive(Clone, Debug)]
pub enum Domain {
    Experts(usize),
    Class(Arc<FiniteClass>),
}

impl Domain {
    pub fn check(&self, instance: &Instance) -> Result<()> {
        match (self, instance) {
            (Domain::Experts(n), Instance::Votes(v)) if v.len() == *n => Ok(()),
            (Domain::Experts(n), Instance::Votes(v)) => {
                Err(Error::Domain(format!("vote vector of length {} for {n} experts", v.len())))
            }
            (Domain::Class(c), Instance::Point(x)) => c.check_instance(*x),
            (Domain::Experts(_), Instance::Point(_)) => Err(Error::Domain("domain instance in an experts game".into())),
            (Domain::Class(_), Instance::Votes(_)) => Err(Error::Domain("vote vector in a class game".into())),
        }
    }

    /// Number of experts or hypotheses.
    pub fn size(&self) -> usize {
        match self {
            Domain::Experts(n) => *n,
            Domain::Class(c) => c.len(),
        }
    }

    /// Prediction of expert or hypothesis `who` on a checked instance.
    pub fn predict(&self, who: usize, instance: &Instance) -> bool {
        match (self, instance) {
            (Domain::Experts(_), Instance::Votes(v)) => v[who],
            (Domain::Class(c), Instance::Point(x)) => c.get(who, *x),
            _ => unreachable!("instance checked against domain"),
        }
    }
}

/// A deterministic online learner.
pub trait Learner {
    fn predict(&mut self, instance: &Instance) -> Result<bool>;

    /// Called once per round after [`Learner::predict`]. `feedback` carries the
    /// label exactly when `prediction` is true.
    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()>;
}

impl<L: Learner + ?Sized> Learner for Box<L> {
    fn predict(&mut self, instance: &Instance) -> Result<bool> {
        (**self).predict(instance)
    }

    fn observe(&mut self, instance: &Instance, prediction: bool, feedback: Option<bool>) -> Result<()> {
        (**self).observe(instance, prediction, feedback)
    }
}

/// Adversary answer to a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Response {
    Label(bool),
    /// Only legal after a prediction of 0.
    Defer,
}

/// Labels for every deferred round (1-based) and the certified witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finalization {
    pub labels: Vec<(usize, bool)>,
    pub witness: usize,
}

/// An adaptive opponent.
pub trait Adversary {
    fn domain(&self) -> Domain;

    /// The `k` for which the emitted sequence is promised `k`-realizable.
    fn realizability(&self) -> usize;

    fn instance(&mut self, t: usize) -> Result<Instance>;

    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response>;

    fn finalize(&mut self) -> Result<Finalization>;
}

impl<A: Adversary + ?Sized> Adversary for Box<A> {
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn realizability(&self) -> usize {
        (**self).realizability()
    }
    fn instance(&mut self, t: usize) -> Result<Instance> {
        (**self).instance(t)
    }
    fn respond(&mut self, t: usize, prediction: bool) -> Result<Response> {
        (**self).respond(t, prediction)
    }
    fn finalize(&mut self) -> Result<Finalization> {
        (**self).finalize()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    /// 1-based.
    pub t: usize,
    pub instance: Instance,
    pub prediction: bool,
    /// `None` while deferred.
    pub label: Option<bool>,
}

impl Round {
    pub fn feedback_visible(&self) -> bool {
        self.prediction
    }
}

/// Witness named by the adversary and its prediction on every round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub witness: usize,
    pub predictions: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub horizon: usize,
    pub realizability_k: usize,
    pub certificate: Option<Certificate>,
}

impl Transcript {
    /// Per-round agreement of the witness with the labels.
    pub fn agreement(&self) -> Result<Vec<bool>> {
        let cert = self.certificate.as_ref().ok_or_else(|| Error::Certificate("transcript has no certificate".into()))?;
        self.rounds
            .iter()
            .zip(&cert.predictions)
            .map(|(r, &p)| {
                r.label.map(|y| y == p).ok_or_else(|| Error::Protocol(format!("round {} is still deferred", r.t)))
            })
            .collect()
    }

    /// Writes `t,instance,yhat,y,feedback_visible` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "instance", "yhat", "y", "feedback_visible"])?;
        for r in &self.rounds {
            let y = match r.label {
                Some(y) => (y as u8).to_string(),
                None => String::new(),
            };
            w.write_record([
                r.t.to_string(),
                r.instance.render(),
                (r.prediction as u8).to_string(),
                y,
                (r.feedback_visible() as u8).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MistakeReport {
    pub total: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

/// Plays `horizon` rounds and collects the adversary's deferred labels and
/// certificate.
pub fn run_game<L, A>(learner: &mut L, adversary: &mut A, horizon: usize) -> Result<Transcript>
where
    L: Learner + ?Sized,
    A: Adversary + ?Sized,
{
    if horizon == 0 {
        return Err(Error::Parameter("horizon must be at least 1".into()));
    }
    let domain = adversary.domain();
    let mut rounds = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let instance = adversary.instance(t)?;
        domain.check(&instance)?;
        let prediction = learner.predict(&instance)?;
        let label = match (prediction, adversary.respond(t, prediction)?) {
            (_, Response::Label(y)) => Some(y),
            (false, Response::Defer) => None,
            (true, Response::Defer) => {
                return Err(Error::Protocol(format!("round {t}: label withheld after a prediction of 1")))
            }
        };
        let feedback = if prediction { label } else { None };
        learner.observe(&instance, prediction, feedback)?;
        rounds.push(Round { t, instance, prediction, label });
    }
    let fin = adversary.finalize()?;
    for &(t, y) in &fin.labels {
        let round = rounds
            .get_mut(t.wrapping_sub(1))
            .ok_or_else(|| Error::Protocol(format!("label committed for nonexistent round {t}")))?;
        match round.label {
            None => round.label = Some(y),
            Some(prev) if prev == y => {}
            Some(_) => return Err(Error::Protocol(format!("round {t}: committed label changed at finalization"))),
        }
    }
    if let Some(r) = rounds.iter().find(|r| r.label.is_none()) {
        return Err(Error::Protocol(format!("round {} left without a label", r.t)));
    }
    if fin.witness >= domain.size() {
        return Err(Error::Protocol(format!("witness {} out of range", fin.witness)));
    }
    let predictions = rounds.iter().map(|r| domain.predict(fin.witness, &r.instance)).collect();
    Ok(Transcript {
        rounds,
        horizon,
        realizability_k: adversary.realizability(),
        certificate: Some(Certificate { witness: fin.witness, predictions }),
    })
}

/// Counts mistakes of a finished transcript.
pub fn score(tr: &Transcript) -> Result<MistakeReport> {
    let mut rep = MistakeReport::default();
    for r in &tr.rounds {
        let y = r.label.ok_or_else(|| Error::Protocol(format!("round {} is still deferred", r.t)))?;
        match (r.prediction, y) {
            (true, false) => rep.false_positives += 1,
            (false, true) => rep.false_negatives += 1,
            _ => {}
        }
    }
    rep.total = rep.false_positives + rep.false_negatives;
    Ok(rep)
}

/// True iff the certified witness disagrees with at most `realizability_k`
/// labels.
pub fn verify_certificate(tr: &Transcript) -> Result<bool> {
    let agree = tr.agreement()?;
    if agree.len() != tr.rounds.len() {
        return Err(Error::Certificate("agreement record length differs from round count".into()));
    }
    Ok(agree.iter().filter(|a| !**a).count() <= tr.realizability_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::ScriptedAdversary;
    use crate::experts::{ConstantLearner, ExpertLearnerState, FollowExpert};

    fn votes(bits: &[u8]) -> Instance {
        Instance::Votes(bits.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn unanimous_zero_game() {
        let mut adv = ScriptedAdversary::experts(1, vec![(votes(&[0]), false); 5], 0, 0).unwrap();
        let tr = run_game(&mut FollowExpert::new(0), &mut adv, 5).unwrap();
        assert_eq!(tr.rounds.len(), 5);
        assert!(tr.rounds.iter().all(|r| !r.prediction && r.label == Some(false) && !r.feedback_visible()));
        assert_eq!(score(&tr).unwrap(), MistakeReport::default());
        assert!(verify_certificate(&tr).unwrap());
    }

    #[test]
    fn unanimous_experts_are_followed() {
        let script: Vec<_> = (0..8).map(|t| (votes(&[t % 2, t % 2]), t % 2 == 1)).collect();
        let mut adv = ScriptedAdversary::experts(2, script, 0, 0).unwrap();
        let mut l = ExpertLearnerState::realizable(2, 8).unwrap();
        let tr = run_game(&mut l, &mut adv, 8).unwrap();
        assert_eq!(score(&tr).unwrap().total, 0);
    }

    #[test]
    fn score_counts_each_kind() {
        let script = vec![(votes(&[1]), false), (votes(&[0]), true)];
        let mut adv = ScriptedAdversary::experts(1, script, 0, 2).unwrap();
        let mut l = FollowExpert::new(0);
        let tr = run_game(&mut l, &mut adv, 2).unwrap();
        let rep = score(&tr).unwrap();
        assert_eq!((rep.total, rep.false_positives, rep.false_negatives), (2, 1, 1));
        assert!(verify_certificate(&tr).unwrap());
    }

    #[test]
    fn certificate_detects_excess_disagreement() {
        let script = vec![(votes(&[1]), false), (votes(&[0]), true)];
        let mut adv = ScriptedAdversary::experts(1, script, 0, 1).unwrap();
        let tr = run_game(&mut ConstantLearner(false), &mut adv, 2).unwrap();
        assert!(!verify_certificate(&tr).unwrap());
        let mut bare = tr.clone();
        bare.certificate = None;
        assert!(matches!(verify_certificate(&bare), Err(Error::Certificate(_))));
    }

    #[test]
    fn deferred_label_blocks_scoring() {
        let mut tr = Transcript { rounds: vec![], horizon: 1, realizability_k: 0, certificate: None };
        tr.rounds.push(Round { t: 1, instance: Instance::Point(0), prediction: false, label: None });
        assert!(matches!(score(&tr), Err(Error::Protocol(_))));
    }

    struct Forgetful;
    impl Adversary for Forgetful {
        fn domain(&self) -> Domain {
            Domain::Experts(1)
        }
        fn realizability(&self) -> usize {
            0
        }
        fn instance(&mut self, _t: usize) -> Result<Instance> {
            Ok(votes(&[0]))
        }
        fn respond(&mut self, _t: usize, _p: bool) -> Result<Response> {
            Ok(Response::Defer)
        }
        fn finalize(&mut self) -> Result<Finalization> {
            Ok(Finalization { labels: vec![], witness: 0 })
        }
    }

    #[test]
    fn missing_commitment_is_a_protocol_error() {
        let err = run_game(&mut ConstantLearner(false), &mut Forgetful, 3).unwrap_err();
        assert!(matches!(err, Error::Protocol(_)));
        let err = run_game(&mut ConstantLearner(true), &mut Forgetful, 3).unwrap_err();
        assert!(matches!(err, Error::Protocol(_)));
    }

    #[test]
    fn out_of_domain_instance_is_rejected() {
        let mut adv = ScriptedAdversary::experts(2, vec![(votes(&[1, 0, 1]), true)], 0, 0).unwrap();
        let err = run_game(&mut ConstantLearner(true), &mut adv, 1).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn transcript_csv() {
        let script = vec![(votes(&[1, 0]), true), (votes(&[0, 1]), false)];
        let mut adv = ScriptedAdversary::experts(2, script, 0, 0).unwrap();
        let tr = run_game(&mut FollowExpert::new(0), &mut adv, 2).unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,instance,yhat,y,feedback_visible\n1,10,1,1,1\n2,01,0,0,0\n");
    }
}
