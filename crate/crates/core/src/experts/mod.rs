//! Deterministic learners with expert advice.

pub mod baseline;
pub mod bounds;
pub mod diagnostics;
pub mod doubling;
pub mod state;

pub use baseline::{ConstantLearner, FollowExpert, Greedy, OverClass};
pub use bounds::MistakeBounds;
pub use diagnostics::{diagnostics, DiagnosticsLedger};
pub use doubling::{DtExpAt, GuessSchedule, Restart};
pub use state::{weight_reaches, ExpertLearnerState, Mode, Params};
