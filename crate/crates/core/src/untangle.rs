//! Turning a covering solution into an order-preserving one by swapping
//! crossed, overlapping active intervals.
//!
//! A swap keeps the union of the two intervals and puts `i` at its left end,
//! `j` at its right end. After every swap the active set is re-minimized
//! within itself and any sensor that fell out goes back to its start.

use crate::error::{Error, Result};
use crate::model::{
    check_lengths, is_order_preserving, minimal_active_set, minimal_active_subset,
    verify_coverage, ActiveSet, Instance, Solution,
};
use crate::scalar::Scalar;

/// Indices `i < j` of two sensors with `y_i > y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingPair {
    pub i: usize,
    pub j: usize,
}

impl CrossingPair {
    pub fn new(i: usize, j: usize) -> Self {
        CrossingPair { i, j }
    }
}

fn span(instance: &Instance, solution: &Solution, k: usize) -> (Scalar, Scalar) {
    let r = &instance.sensors()[k].r;
    let y = &solution.y[k];
    (y - r, y + r)
}

/// Union of the two intervals when the pair is crossed and the intervals
/// overlap or touch.
fn swappable_union(
    instance: &Instance,
    solution: &Solution,
    pair: CrossingPair,
) -> Option<(Scalar, Scalar)> {
    let CrossingPair { i, j } = pair;
    if i >= j || solution.y[i] <= solution.y[j] {
        return None;
    }
    let (lo_i, hi_i) = span(instance, solution, i);
    let (lo_j, hi_j) = span(instance, solution, j);
    if lo_i > hi_j || lo_j > hi_i {
        return None;
    }
    Some((lo_i.min(lo_j), hi_i.max(hi_j)))
}

/// Swaps a crossed pair so that `i` takes the left end of the union and `j`
/// the right end.
pub fn swap_pair(instance: &Instance, solution: &Solution, pair: CrossingPair) -> Result<Solution> {
    check_lengths(instance, solution)?;
    let n = instance.len();
    if pair.i >= n || pair.j >= n {
        return Err(Error::Precondition(format!(
            "pair ({}, {}) out of range for {n} sensors",
            pair.i, pair.j
        )));
    }
    let (u1, u2) = swappable_union(instance, solution, pair).ok_or_else(|| {
        Error::Precondition(format!(
            "sensors {} and {} are not a crossed overlapping pair",
            pair.i, pair.j
        ))
    })?;
    let mut y = solution.y.clone();
    y[pair.i] = &u1 + &instance.sensors()[pair.i].r;
    y[pair.j] = &u2 - &instance.sensors()[pair.j].r;
    Ok(Solution::new(y))
}

/// Crossed overlapping pair in `active` with the leftmost union (then the
/// shorter union, then the smaller indices).
fn next_pair(
    instance: &Instance,
    solution: &Solution,
    active: &ActiveSet,
) -> Option<CrossingPair> {
    let members: Vec<usize> = active.iter().collect();
    let mut best: Option<((Scalar, Scalar), CrossingPair)> = None;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            let pair = CrossingPair::new(i, j);
            if let Some(union) = swappable_union(instance, solution, pair) {
                if best.as_ref().is_none_or(|(u, _)| &union < u) {
                    best = Some((union, pair));
                }
            }
        }
    }
    best.map(|(_, pair)| pair)
}

fn reset_inactive(instance: &Instance, solution: &mut Solution, active: &ActiveSet) {
    for (k, sensor) in instance.sensors().iter().enumerate() {
        if !active.contains(k) {
            solution.y[k] = sensor.x.clone();
        }
    }
}

/// Untangles a covering solution. Returns the order-preserving solution and
/// its active set; every sensor outside the set is back at its start.
pub fn untangle(instance: &Instance, solution: &Solution) -> Result<(Solution, ActiveSet)> {
    untangle_traced(instance, solution).map(|(s, a, _)| (s, a))
}

/// [`untangle`] plus the swapped pairs in order.
pub fn untangle_traced(
    instance: &Instance,
    solution: &Solution,
) -> Result<(Solution, ActiveSet, Vec<CrossingPair>)> {
    check_lengths(instance, solution)?;
    let mut active = minimal_active_set(instance, solution)?;
    let mut current = solution.clone();
    reset_inactive(instance, &mut current, &active);

    let n = instance.len();
    let max_steps = n * n;
    let mut swaps: Vec<CrossingPair> = Vec::new();
    while let Some(pair) = next_pair(instance, &current, &active) {
        if swaps.last() == Some(&pair) {
            return Err(Error::Internal(format!(
                "pair ({}, {}) selected twice in a row",
                pair.i, pair.j
            )));
        }
        if swaps.len() == max_steps {
            return Err(Error::Internal(format!(
                "untangling exceeded {max_steps} swaps"
            )));
        }
        current = swap_pair(instance, &current, pair)?;
        swaps.push(pair);
        active = minimal_active_subset(instance, &current, active.iter())
            .map_err(|_| Error::Internal("swap broke coverage".into()))?;
        reset_inactive(instance, &mut current, &active);
        debug_assert!(verify_coverage(instance, &current)?.covered);
    }

    if !is_order_preserving(instance, &current, &active)? {
        return Err(Error::Internal(
            "no swappable pair left but the active set is out of order".into(),
        ));
    }
    Ok((current, active, swaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cost, Sensor};

    fn sol(y: &[i64]) -> Solution {
        Solution::new(y.iter().map(|&v| Scalar::int(v)).collect())
    }

    fn crossed() -> Instance {
        Instance::new(6, vec![Sensor::new(0, 1), Sensor::new(10, 2)]).unwrap()
    }

    #[test]
    fn swap_keeps_the_union() {
        let inst = crossed();
        let before = sol(&[5, 2]);
        let after = swap_pair(&inst, &before, CrossingPair::new(0, 1)).unwrap();
        assert_eq!(after, sol(&[1, 4]));
        assert_eq!(cost(&inst, &before).unwrap(), Scalar::int(13));
        assert_eq!(cost(&inst, &after).unwrap(), Scalar::int(7));
        assert!(verify_coverage(&inst, &after).unwrap().covered);
    }

    #[test]
    fn equal_radii_trade_spans() {
        let inst = Instance::new(4, vec![Sensor::new(0, 1), Sensor::new(1, 1)]).unwrap();
        let after = swap_pair(&inst, &sol(&[3, 1]), CrossingPair::new(0, 1)).unwrap();
        assert_eq!(after, sol(&[1, 3]));
    }

    #[test]
    fn swap_rejects_bad_pairs() {
        let inst = crossed();
        let ordered = swap_pair(&inst, &sol(&[1, 4]), CrossingPair::new(0, 1));
        assert!(matches!(ordered, Err(Error::Precondition(_))));
        // crossed but apart: [9, 11] and [-2, 2]
        let apart = swap_pair(&inst, &sol(&[10, 0]), CrossingPair::new(0, 1));
        assert!(matches!(apart, Err(Error::Precondition(_))));
        let reversed = swap_pair(&inst, &sol(&[5, 2]), CrossingPair::new(1, 0));
        assert!(matches!(reversed, Err(Error::Precondition(_))));
    }

    #[test]
    fn single_swap_example() {
        let (y, active) = untangle(&crossed(), &sol(&[5, 2])).unwrap();
        assert_eq!(y, sol(&[1, 4]));
        assert_eq!(active, ActiveSet::new([0, 1]));
    }

    #[test]
    fn ordered_input_is_a_fixpoint() {
        let inst = Instance::new(
            4,
            vec![Sensor::new(0, 1), Sensor::new(2, 1), Sensor::new(5, 1)],
        )
        .unwrap();
        // sensor 1 is redundant and goes home
        let (y, active) = untangle(&inst, &sol(&[1, 2, 3])).unwrap();
        assert_eq!(active, ActiveSet::new([0, 2]));
        assert_eq!(y, sol(&[1, 2, 3]));
        let (y, _) = untangle(&inst, &sol(&[1, 7, 3])).unwrap();
        assert_eq!(y, sol(&[1, 2, 3]));
    }

    #[test]
    fn not_covering_is_infeasible() {
        let r = untangle(&crossed(), &sol(&[0, 10]));
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }

    #[test]
    fn big_sensor_cascades_left() {
        // optimum of the big-plus-four-smalls family: big moved to the end
        let mut sensors = vec![Sensor::new(0, 2)];
        sensors.extend([1, 3, 5, 7].map(|x| Sensor::new(x, 1)));
        let inst = Instance::new(12, sensors).unwrap();
        let (y, active, swaps) = untangle_traced(&inst, &sol(&[10, 1, 3, 5, 7])).unwrap();
        assert_eq!(swaps.len(), 4);
        assert_eq!(active.len(), 5);
        // every small one ends 2·rho to the right
        assert_eq!(y, sol(&[2, 5, 7, 9, 11]));
        assert_eq!(cost(&inst, &y).unwrap(), Scalar::int(18));
    }
}
