//! The algebraic expansion of L(λ, a, s) for large |a| and its exact
//! exponentially improved decomposition into H blocks and terminant remainders.

mod improved;
mod poincare;
mod schedule;

pub use improved::{
    double_sum_direct, exp_improved_auto, exp_improved_eval, h_block, remainder_terms,
    BreakdownRecord, ExpansionBreakdown,
};
pub(crate) use improved::{h_block_in, padded_base, remainder_pair_in, Frame};
pub use poincare::{poincare_expand, poincare_remainder, smallest_term, PoincareExpansion};
pub use schedule::{optimal_truncation, TruncationSchedule};
