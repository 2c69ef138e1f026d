//! Order-preserving solutions by dynamic programming over movement budgets.
//!
//! `T[i, b]` is the furthest point `t` such that `[0, t]` can be covered by an
//! order-preserving arrangement of sensors `0..i` whose movement fits in `b`
//! budget units. Sensor `i` either stays out of the active set, or joins it
//! after moving `k` units: with `t = T[i-1, b-k]` it can be centered anywhere
//! within `k·unit` of `x_i`, and the best spot is as far right as possible
//! without leaving a hole at `t`, i.e. `min(x_i + k·unit, t + r_i)`. That spot
//! is valid iff `t ≥ x_i - k·unit - r_i`.
//!
//! With `unit = 1` on integral data this is the exact pseudo-polynomial
//! algorithm. With `unit = q` it minimizes the rounded cost
//! `Σ ⌈|y_i - x_i| / q⌉`, which gives the `(1 + ε)` scheme.

use crate::error::{Error, Result};
use crate::grid::IntInstance;
use crate::model::{
    cost, is_feasible, minimal_active_subset, verify_coverage, ActiveSet, Instance, Solution,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Choice {
    Skip,
    Place { units: usize, center: Scalar },
}

/// Reach table plus the choices needed to rebuild a solution.
#[derive(Debug, Clone)]
pub struct DpTable {
    unit: Scalar,
    reach: Vec<Vec<Scalar>>,
    choice: Vec<Vec<Choice>>,
}

impl DpTable {
    /// Fills the table for budgets `0..=max_units`. Reach values are clamped
    /// at `L`.
    pub fn build(instance: &Instance, unit: &Scalar, max_units: usize) -> DpTable {
        assert!(unit.is_positive(), "budget unit must be positive");
        let n = instance.len();
        let length = instance.length();
        let width = max_units + 1;
        let mut reach = vec![vec![Scalar::zero(); width]; n + 1];
        let mut choice = vec![vec![Choice::Skip; width]; n + 1];
        let moves: Vec<Scalar> = (0..width).map(|k| unit * Scalar::int(k as i64)).collect();

        for i in 1..=n {
            let sensor = &instance.sensors()[i - 1];
            let (x, r) = (&sensor.x, &sensor.r);
            for b in 0..width {
                let mut best = reach[i - 1][b].clone();
                let mut pick = Choice::Skip;
                for k in 0..=b {
                    let t = &reach[i - 1][b - k];
                    let step = &moves[k];
                    if t < &(x - step - r) {
                        continue;
                    }
                    let center = (x + step).min(t + r);
                    let covered = (&center + r).min(length.clone());
                    if covered > best {
                        best = covered;
                        pick = Choice::Place { units: k, center };
                    }
                }
                reach[i][b] = best;
                choice[i][b] = pick;
            }
        }
        DpTable {
            unit: unit.clone(),
            reach,
            choice,
        }
    }

    pub fn unit(&self) -> &Scalar {
        &self.unit
    }

    pub fn max_units(&self) -> usize {
        self.reach[0].len() - 1
    }

    pub fn sensors(&self) -> usize {
        self.reach.len() - 1
    }

    /// `T[i, b]`: coverage reach using sensors `0..i` within `b` units.
    pub fn reach(&self, i: usize, b: usize) -> &Scalar {
        &self.reach[i][b]
    }

    /// Smallest budget whose full-table reach is at least `length`.
    pub fn min_units_covering(&self, length: &Scalar) -> Option<usize> {
        let n = self.sensors();
        (0..=self.max_units()).find(|&b| &self.reach[n][b] >= length)
    }

    /// Rebuilds the arrangement behind `T[n, units]`: placed sensors get
    /// their chosen center, every other sensor stays at its start.
    pub fn reconstruct(&self, instance: &Instance, units: usize) -> (Solution, Vec<usize>) {
        let mut y: Vec<Scalar> = instance.sensors().iter().map(|s| s.x.clone()).collect();
        let mut chain = Vec::new();
        let mut b = units;
        for i in (1..=self.sensors()).rev() {
            if let Choice::Place { units: k, center } = &self.choice[i][b] {
                y[i - 1] = center.clone();
                chain.push(i - 1);
                b -= k;
            }
        }
        chain.reverse();
        (Solution::new(y), chain)
    }
}

/// Accuracy parameters of the rounded-cost scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsParams {
    pub eps: Scalar,
    pub opt_guess: Scalar,
    pub q: Scalar,
}

impl EpsParams {
    /// `q = eps · opt_guess / n`.
    pub fn new(eps: Scalar, opt_guess: Scalar, n: usize) -> Result<Self> {
        if !eps.is_positive() || !opt_guess.is_positive() || n == 0 {
            return Err(Error::Precondition(
                "eps, the optimum guess and n must all be positive".into(),
            ));
        }
        let q = &eps * &opt_guess / Scalar::int(n as i64);
        Ok(EpsParams { eps, opt_guess, q })
    }
}

/// `Σ ⌈|y_i - x_i| / q⌉`.
pub fn rounded_cost(instance: &Instance, solution: &Solution, q: &Scalar) -> Result<Scalar> {
    crate::model::check_lengths(instance, solution)?;
    if !q.is_positive() {
        return Err(Error::Precondition("q must be positive".into()));
    }
    Ok(instance
        .sensors()
        .iter()
        .zip(&solution.y)
        .map(|(s, y)| ((y - &s.x).abs() / q).ceil())
        .sum())
}

fn finish(instance: &Instance, table: &DpTable, units: usize) -> Result<(Solution, ActiveSet)> {
    let (solution, chain) = table.reconstruct(instance, units);
    let active = minimal_active_subset(instance, &solution, chain)
        .map_err(|_| Error::Internal("reconstructed chain does not cover the barrier".into()))?;
    Ok((solution, active))
}

fn require_integral_budget(budget: &Scalar) -> Result<usize> {
    if budget.is_negative() || !budget.is_integer() {
        return Err(Error::Precondition(format!(
            "budget must be a nonnegative integer, got {budget}"
        )));
    }
    budget
        .to_i64()
        .map(|b| b as usize)
        .ok_or_else(|| Error::Precondition(format!("budget {budget} is too large")))
}

/// Cheapest order-preserving solution with cost at most `budget`, on
/// integral data.
pub fn dp_exact(instance: &Instance, budget: &Scalar) -> Result<Option<(Solution, ActiveSet)>> {
    IntInstance::new(instance)?;
    let budget = require_integral_budget(budget)?;
    let table = DpTable::build(instance, &Scalar::one(), budget);
    match table.min_units_covering(instance.length()) {
        Some(units) => finish(instance, &table, units).map(Some),
        None => Ok(None),
    }
}

/// Optimal order-preserving solution on integral data. The budget doubles
/// until the table covers the barrier; the smallest covering budget in that
/// table is the optimum.
pub fn dp_optimal(instance: &Instance) -> Result<(Solution, ActiveSet)> {
    IntInstance::new(instance)?;
    if !is_feasible(instance) {
        return Err(Error::Infeasible(
            "total sensor length is shorter than the barrier".into(),
        ));
    }
    let mut budget = 1usize;
    loop {
        let table = DpTable::build(instance, &Scalar::one(), budget);
        if let Some(units) = table.min_units_covering(instance.length()) {
            return finish(instance, &table, units);
        }
        budget *= 2;
    }
}

/// `(1 + eps)`-approximate order-preserving solution; no integrality needed.
///
/// The optimum guess `G` starts at the total gap length (a lower bound on
/// any solution's cost) and doubles. Each round runs the table with
/// `q = (eps/2)·G/n` and `⌈2n/eps⌉ + n` units: if `OPT ≤ G` the rounded
/// optimum fits, so a failed round proves `OPT > G`. The first successful
/// round therefore has `G < 2·OPT` and returns cost at most
/// `OPT + q·n ≤ (1 + eps)·OPT`.
pub fn dp_eps(instance: &Instance, eps: &Scalar) -> Result<(Solution, ActiveSet)> {
    dp_eps_with_params(instance, eps).map(|(s, a, _)| (s, a))
}

/// [`dp_eps`] plus the parameters of the round that succeeded.
pub fn dp_eps_with_params(
    instance: &Instance,
    eps: &Scalar,
) -> Result<(Solution, ActiveSet, Option<EpsParams>)> {
    if !eps.is_positive() {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    if !is_feasible(instance) {
        return Err(Error::Infeasible(
            "total sensor length is shorter than the barrier".into(),
        ));
    }
    let stay = Solution::stationary(instance);
    let report = verify_coverage(instance, &stay)?;
    if report.covered {
        let active = minimal_active_subset(instance, &stay, 0..instance.len())?;
        return Ok((stay, active, None));
    }

    let n = instance.len();
    let half = eps / Scalar::int(2);
    let units = (Scalar::int(n as i64) / &half).ceil() + Scalar::int(n as i64);
    let units = units
        .to_i64()
        .ok_or_else(|| Error::Precondition("eps too small".into()))? as usize;
    let mut guess = report.total_gap();
    loop {
        let params = EpsParams::new(half.clone(), guess.clone(), n)?;
        let table = DpTable::build(instance, &params.q, units);
        if let Some(b) = table.min_units_covering(instance.length()) {
            let (solution, active) = finish(instance, &table, b)?;
            debug_assert!(cost(instance, &solution)? <= &params.q * Scalar::int(b as i64));
            return Ok((solution, active, Some(params)));
        }
        guess = guess * Scalar::int(2);
    }
}
