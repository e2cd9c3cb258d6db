//! Online binary prediction under apple-tasting feedback: the label of a round
//! is revealed only when the learner predicts 1.
//!
//! The crate is organised bottom-up:
//!
//! * [`game`] runs one learner against one adversary and scores the transcript.
//! * [`experts`] holds the deterministic exponential-weights learners over a
//!   finite set of experts, their doubling wrapper and replay diagnostics.
//! * [`combinatorics`] represents finite hypothesis classes and computes the
//!   tree dimensions, gluing, and an exact minimax game value at tiny scale.
//! * [`concepts`] holds the hypothesis-class learners, including the covering
//!   reduction to experts.
//! * [`adversaries`] holds the lower-bound strategies, fuzzers and the random
//!   class sampler.
//! * [`harness`] drives parameter sweeps, fits scaling exponents and formats
//!   reports for the command-line tool.

pub mod adversaries;
pub mod combinatorics;
pub mod concepts;
pub mod error;
pub mod experts;
pub mod game;
pub mod harness;

pub use error::{Error, Result};
pub use game::{
    run_game, score, verify_certificate, Adversary, Certificate, Domain, Finalization, Instance,
    Learner, MistakeReport, Response, Round, Transcript,
};
