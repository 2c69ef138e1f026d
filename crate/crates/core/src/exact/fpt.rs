//! Branching on the leftmost gap, parameterized by the movement budget.
//!
//! At every node the leftmost uncovered point must end up covered by some
//! sensor that has not moved yet. Only sensors within the remaining budget of
//! the gap can do that, and for each endpoint value only the `b + 1` longest
//! such sensors need to be tried (a shorter one can always be traded for a
//! longer one with the same endpoint). Each branch fixes one sensor at an
//! integer center covering that point, so the tree depth is at most the
//! budget.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::grid::IntInstance;
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

use super::budget_to_i64;

/// Sensors that may close a gap, grouped by the endpoint facing the gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCandidateSet {
    pub gap: (i64, i64),
    /// Right endpoint `p` in `[gap.0 - b, gap.0]` → sensors ending at `p`.
    pub left: BTreeMap<i64, Vec<usize>>,
    /// Left endpoint `p` in `[gap.1, gap.0 + b]` → sensors starting at `p`.
    pub right: BTreeMap<i64, Vec<usize>>,
}

impl GapCandidateSet {
    /// Builds the candidate set for `gap` given the still-unmoved sensors and
    /// remaining budget `b`. Each group is cut to its `b + 1` longest members
    /// (ties: lower index first).
    pub fn build(inst: &IntInstance, movable: &[bool], gap: (i64, i64), b: i64) -> Self {
        let (gl, gr) = gap;
        let mut left: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut right: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for j in (0..inst.len()).filter(|&j| movable[j]) {
            let (lo, hi) = (inst.x[j] - inst.r[j], inst.x[j] + inst.r[j]);
            if hi <= gl && hi >= gl - b {
                left.entry(hi).or_default().push(j);
            } else if lo >= gr && lo <= gl + b {
                right.entry(lo).or_default().push(j);
            }
        }
        let keep = (b + 1).max(0) as usize;
        for group in left.values_mut().chain(right.values_mut()) {
            group.sort_by(|&a, &c| inst.r[c].cmp(&inst.r[a]).then(a.cmp(&c)));
            group.truncate(keep);
        }
        GapCandidateSet { gap, left, right }
    }

    pub fn sensors(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.values().chain(self.right.values()).flatten().copied()
    }
}

/// Cheapest covering solution with cost at most `budget`, or `None`.
pub fn fpt_solve(instance: &Instance, budget: &Scalar) -> Result<Option<(Solution, Scalar)>> {
    let inst = IntInstance::new(instance)?;
    let budget = budget_to_i64(budget)?;
    let mut search = Branching {
        inst: &inst,
        budget,
        y: inst.x.clone(),
        movable: vec![true; inst.len()],
        best: None,
        nodes: 0,
    };
    search.branch(0);
    Ok(search
        .best
        .map(|(y, c)| (inst.solution(&y), Scalar::int(c))))
}

/// Smallest-budget run of [`fpt_solve`], doubling from the total gap length.
pub fn fpt_optimum(instance: &Instance) -> Result<Option<(Solution, Scalar)>> {
    let inst = IntInstance::new(instance)?;
    if inst.total_length() < inst.length {
        return Ok(None);
    }
    let lower: i64 = inst.gaps(&inst.x).iter().map(|(a, b)| b - a).sum();
    let mut budget = lower.max(1);
    loop {
        if let Some(found) = fpt_solve(instance, &Scalar::int(budget))? {
            return Ok(Some(found));
        }
        budget *= 2;
    }
}

struct Branching<'a> {
    inst: &'a IntInstance,
    budget: i64,
    y: Vec<i64>,
    movable: Vec<bool>,
    best: Option<(Vec<i64>, i64)>,
    nodes: u64,
}

impl Branching<'_> {
    fn branch(&mut self, spent: i64) {
        self.nodes += 1;
        let gaps = self.inst.gaps(&self.y);
        if gaps.is_empty() {
            if self.best.as_ref().is_none_or(|(_, c)| spent < *c) {
                self.best = Some((self.y.clone(), spent));
            }
            return;
        }
        let limit = match &self.best {
            Some((_, c)) => c - 1,
            None => self.budget,
        };
        let remaining = limit - spent;
        let total_gap: i64 = gaps.iter().map(|(a, b)| b - a).sum();
        if total_gap > remaining {
            return;
        }

        let gap = gaps[0];
        let candidates = GapCandidateSet::build(self.inst, &self.movable, gap, remaining);
        let mut moves: Vec<(i64, usize, i64)> = Vec::new();
        for j in candidates.sensors() {
            let (x, r) = (self.inst.x[j], self.inst.r[j]);
            // centers whose interval contains gap.0 and reaches past it
            for c in (gap.0 - r + 1)..=(gap.0 + r) {
                let d = (c - x).abs();
                if d <= remaining {
                    moves.push((d, j, c));
                }
            }
        }
        moves.sort_unstable();
        for (d, j, c) in moves {
            let still_useful = match &self.best {
                Some((_, best)) => spent + d < *best,
                None => spent + d <= self.budget,
            };
            if !still_useful {
                continue;
            }
            let old = self.y[j];
            self.y[j] = c;
            self.movable[j] = false;
            self.branch(spent + d);
            self.movable[j] = true;
            self.y[j] = old;
        }
    }
}
