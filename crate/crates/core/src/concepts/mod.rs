//! Learners for finite hypothesis classes.

pub mod cover;
pub mod doubling;
pub mod narrow;
pub mod reduction;

pub use cover::{cover_size, soa_predict, CoverExpertSet, CoverRunner};
pub use doubling::DoublingReduction;
pub use narrow::{DoublingNarrow, NarrowConceptAt};
pub use reduction::{make_reduction_learner, CoverStrategy, ExpertSource, ReductionLearner, ReductionOptions};
