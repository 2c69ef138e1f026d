//! Ground-truth solvers on integral instances.
//!
//! All of these require integer `L`, `x_i` and `r_i`; use
//! [`crate::grid::Scaled`] to move rational instances onto the integer grid.
//! Hitting a search cap is reported as [`crate::Error::ResourceLimit`], never
//! as "no solution".

mod brute;
mod class_search;
mod fpt;
mod kmove;

pub use brute::{brute_force, brute_force_default, brute_force_optimum};
pub use class_search::{class_order_optimum, class_order_optimum_capped};
pub use fpt::{fpt_optimum, fpt_solve, GapCandidateSet};
pub use kmove::{kmove_brute_force, KMoveQuery};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default limit on enumerated states.
pub const DEFAULT_STATE_CAP: u128 = 100_000_000;

/// Budgets are integral on the grid; a fractional budget is rounded down.
pub(crate) fn budget_to_i64(budget: &Scalar) -> Result<i64> {
    if budget.is_negative() {
        return Err(Error::Precondition(format!(
            "budget must be nonnegative, got {budget}"
        )));
    }
    budget
        .floor()
        .to_i64()
        .ok_or_else(|| Error::Precondition(format!("budget {budget} is too large")))
}
