use crate::error::{Error, Result};
use crate::grid::IntInstance;
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

use super::{budget_to_i64, DEFAULT_STATE_CAP};

/// Exhaustive search over integer movement vectors with total movement at
/// most `budget`. Returns a cheapest covering solution and its cost.
///
/// Each center is confined to `[min(-r_i, x_i), max(L + r_i, x_i)]`; a center
/// outside that range cannot help cover the barrier. The number of vectors is
/// counted before searching and compared against `cap`.
pub fn brute_force(
    instance: &Instance,
    budget: &Scalar,
    cap: u128,
) -> Result<Option<(Solution, Scalar)>> {
    let inst = IntInstance::new(instance)?;
    let budget = budget_to_i64(budget)?;
    let ranges = position_ranges(&inst);

    let estimate = count_vectors(&inst, &ranges, budget);
    if estimate > cap {
        return Err(Error::ResourceLimit { estimate, cap });
    }

    let mut search = Exhaustive {
        inst: &inst,
        ranges: &ranges,
        budget,
        y: inst.x.clone(),
        best: None,
    };
    search.visit(0, 0);
    Ok(search
        .best
        .map(|(y, c)| (inst.solution(&y), Scalar::int(c))))
}

/// Minimum-cost covering solution, found by doubling the budget passed to
/// [`brute_force`]. `None` iff the instance is infeasible.
pub fn brute_force_optimum(instance: &Instance, cap: u128) -> Result<Option<(Solution, Scalar)>> {
    let inst = IntInstance::new(instance)?;
    if inst.total_length() < inst.length {
        return Ok(None);
    }
    let lower: i64 = inst.gaps(&inst.x).iter().map(|(a, b)| b - a).sum();
    let mut budget = lower.max(1);
    loop {
        if let Some(found) = brute_force(instance, &Scalar::int(budget), cap)? {
            return Ok(Some(found));
        }
        budget *= 2;
    }
}

/// `brute_force` with the default state cap.
pub fn brute_force_default(instance: &Instance, budget: &Scalar) -> Result<Option<(Solution, Scalar)>> {
    brute_force(instance, budget, DEFAULT_STATE_CAP)
}

pub(crate) fn position_ranges(inst: &IntInstance) -> Vec<(i64, i64)> {
    inst.x
        .iter()
        .zip(&inst.r)
        .map(|(&x, &r)| ((-r).min(x), (inst.length + r).max(x)))
        .collect()
}

/// Number of vectors `d` with `Σ|d_i| ≤ budget` and every `x_i + d_i` in range.
fn count_vectors(inst: &IntInstance, ranges: &[(i64, i64)], budget: i64) -> u128 {
    let b = budget as usize;
    // ways[s] = number of partial vectors with total movement exactly s
    let mut ways = vec![0u128; b + 1];
    ways[0] = 1;
    for (i, &(lo, hi)) in ranges.iter().enumerate() {
        let x = inst.x[i];
        let mut next = vec![0u128; b + 1];
        for (spent, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for d in 0..=(b - spent) {
                let mut options = 0u128;
                let di = d as i64;
                if d == 0 {
                    options = 1;
                } else {
                    if x + di <= hi {
                        options += 1;
                    }
                    if x - di >= lo {
                        options += 1;
                    }
                }
                next[spent + d] = next[spent + d].saturating_add(w.saturating_mul(options));
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |acc, &w| acc.saturating_add(w))
}

struct Exhaustive<'a> {
    inst: &'a IntInstance,
    ranges: &'a [(i64, i64)],
    budget: i64,
    y: Vec<i64>,
    best: Option<(Vec<i64>, i64)>,
}

impl Exhaustive<'_> {
    fn limit(&self) -> i64 {
        match &self.best {
            Some((_, c)) => c - 1,
            None => self.budget,
        }
    }

    fn visit(&mut self, i: usize, spent: i64) {
        if spent > self.limit() {
            return;
        }
        if i == self.inst.len() {
            if self.inst.covers(&self.y) {
                self.best = Some((self.y.clone(), spent));
            }
            return;
        }
        let x = self.inst.x[i];
        let (lo, hi) = self.ranges[i];
        let mut d = 0;
        while spent + d <= self.limit() {
            if d == 0 {
                self.visit(i + 1, spent);
            } else {
                for pos in [x - d, x + d] {
                    if pos >= lo && pos <= hi {
                        self.y[i] = pos;
                        self.visit(i + 1, spent + d);
                    }
                }
                self.y[i] = x;
            }
            d += 1;
        }
    }
}
