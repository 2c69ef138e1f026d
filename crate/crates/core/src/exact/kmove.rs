use crate::error::{Error, Result};
use crate::grid::IntInstance;
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

use super::budget_to_i64;

/// Budget and mover limit for the k-move decision problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMoveQuery {
    pub budget: Scalar,
    pub k: usize,
}

/// Any covering solution with cost at most `query.budget` that moves at most
/// `query.k` sensors, found by enumerating mover subsets and integer centers
/// in `[-r_i, L + r_i]` for each mover.
pub fn kmove_brute_force(
    instance: &Instance,
    query: &KMoveQuery,
    cap: u128,
) -> Result<Option<Solution>> {
    let inst = IntInstance::new(instance)?;
    if query.budget.is_negative() {
        return Err(Error::Precondition("budget must be nonnegative".into()));
    }
    let budget = budget_to_i64(&query.budget)?;
    let k = query.k.min(inst.len());

    let choices: Vec<Vec<i64>> = (0..inst.len())
        .map(|i| {
            let r = inst.r[i];
            (-r..=inst.length + r)
                .filter(|&c| c != inst.x[i] && (c - inst.x[i]).abs() <= budget)
                .collect()
        })
        .collect();

    let estimate = estimate(&choices, k);
    if estimate > cap {
        return Err(Error::ResourceLimit { estimate, cap });
    }

    let mut search = Subsets {
        inst: &inst,
        choices: &choices,
        budget,
        y: inst.x.clone(),
    };
    Ok(search.visit(0, k, 0).map(|y| inst.solution(&y)))
}

/// `Σ_{|M| ≤ k} Π_{i ∈ M} |choices_i|`.
fn estimate(choices: &[Vec<i64>], k: usize) -> u128 {
    // elementary symmetric sums e_0..e_k of the choice counts
    let mut e = vec![0u128; k + 1];
    e[0] = 1;
    for c in choices {
        let c = c.len() as u128;
        for s in (1..=k).rev() {
            e[s] = e[s].saturating_add(e[s - 1].saturating_mul(c));
        }
    }
    e.iter().fold(0u128, |a, &v| a.saturating_add(v))
}

struct Subsets<'a> {
    inst: &'a IntInstance,
    choices: &'a [Vec<i64>],
    budget: i64,
    y: Vec<i64>,
}

impl Subsets<'_> {
    fn visit(&mut self, i: usize, movers_left: usize, spent: i64) -> Option<Vec<i64>> {
        if i == self.inst.len() {
            return self.inst.covers(&self.y).then(|| self.y.clone());
        }
        if let Some(y) = self.visit(i + 1, movers_left, spent) {
            return Some(y);
        }
        if movers_left == 0 {
            return None;
        }
        let x = self.inst.x[i];
        for idx in 0..self.choices[i].len() {
            let c = self.choices[i][idx];
            let d = (c - x).abs();
            if spent + d > self.budget {
                continue;
            }
            self.y[i] = c;
            let found = self.visit(i + 1, movers_left - 1, spent + d);
            self.y[i] = x;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}
