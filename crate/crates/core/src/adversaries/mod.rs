//! Lower-bound strategies, fuzzers and the random-class sampler.
//!
//! Every adversary names a witness at finalization whose disagreements with
//! the committed labels stay within its declared budget.

pub mod fuzz;
pub mod phase;
pub mod random_class;
pub mod scripted;
pub mod version_space;
pub mod width1;

pub use fuzz::{FuzzAdversary, FuzzKind, FuzzSource};
pub use phase::{phase_block_count, AgnosticPhaseAdversary, PhaseAdversary};
pub use random_class::{
    sample_random_class, verify_random_class, ItemStatus, RandomClassReport, RandomClassSpec, VerifyOptions,
};
pub use scripted::ScriptedAdversary;
pub use version_space::VersionSpaceAdversary;
pub use width1::Width1Adversary;
