//! Finite classes, shattering, tree dimensions, gluing and exact game values.

pub mod class;
pub mod dims;
pub mod glue;
pub mod oracle;
pub mod tree;

pub use class::{is_k_realizable, BudgetedClass, FiniteClass, MAX_DOMAIN};
pub use dims::{
    budgeted_width_depth, d1_k, effective_width, littlestone_dim, width1_witness, width_depth, Depth, Littlestone,
    SearchBudget, Trichotomy, Width,
};
pub use glue::{glue, glue_named};
pub use oracle::{learner_worst_case, minimax_oracle, minimax_oracle_plain};
pub use tree::{is_shattered, WidthTree};
