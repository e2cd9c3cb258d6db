//! Fixed sequences, for tests and replays.

use std::sync::Arc;

use crate::combinatorics::FiniteClass;
use crate::error::{param, Error, Result};
use crate::game::{Adversary, Domain, Finalization, Instance, Response};

/// Emits a fixed labelled sequence and labels every round at once.
///
/// Instances are not checked here; the game engine rejects out-of-domain ones.
#[derive(Clone, Debug)]
pub struct ScriptedAdversary {
    domain: Domain,
    script: Vec<(Instance, bool)>,
    witness: usize,
    k: usize,
}

impl ScriptedAdversary {
    pub fn experts(n: usize, script: Vec<(Instance, bool)>, witness: usize, k: usize) -> Result<Self> {
        if witness >= n {
            return param(format!("witness {witness} out of range for {n} experts"));
        }
        Ok(ScriptedAdversary { domain: Domain::Experts(n), script, witness, k })
    }

    pub fn class(class: Arc<FiniteClass>, script: &[(usize, bool)], witness: usize, k: usize) -> Result<Self> {
        if witness >= class.len() {
            return param(format!("witness {witness} out of range for {} hypotheses", class.len()));
        }
        let script = script.iter().map(|&(x, y)| (Instance::Point(x), y)).collect();
        Ok(ScriptedAdversary { domain: Domain::Class(class), script, witness, k })
    }

    pub fn len(&self) -> usize {
        self.script.len()
    }

    pub fn is_empty(&self) -> bool {
        self.script.is_empty()
    }
}

impl Adversary for ScriptedAdversary {
    fn domain(&self) -> Domain {
        self.domain.clone()
    }

    fn realizability(&self) -> usize {
        self.k
    }

    fn instance(&mut self, t: usize) -> Result<Instance> {
        self.script
            .get(t - 1)
            .map(|(i, _)| i.clone())
            .ok_or_else(|| Error::Parameter(format!("script has no round {t}")))
    }

    fn respond(&mut self, t: usize, _prediction: bool) -> Result<Response> {
        Ok(Response::Label(self.script[t - 1].1))
    }

    fn finalize(&mut self) -> Result<Finalization> {
        Ok(Finalization { labels: Vec::new(), witness: self.witness })
    }
}
