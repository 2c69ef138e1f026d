//! Exact optimum by a left-to-right covering search over radius classes.
//!
//! Two active sensors with the same radius can always trade places without
//! changing coverage, and matching them in start order never costs more. So
//! some optimal solution keeps each radius class in start order, with every
//! inactive sensor left in place. The search builds the active set as a chain
//! of intervals sorted by right endpoint: the state is the covered prefix
//! `[0, f]` plus, per class, how many members have been passed over. Between
//! radius classes any interleaving is allowed, which is what separates this
//! from an order-preserving solution.
//!
//! The state space is `(L + 1) · Π (|class| + 1)`, which stays small for
//! families with few distinct radii even when brute force is hopeless.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::grid::IntInstance;
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

/// Predecessor of a chain state: the state it came from and the placement.
#[derive(Clone)]
struct Step {
    from: (i64, Vec<u16>),
    sensor: usize,
    center: i64,
}

#[derive(Clone)]
struct Entry {
    cost: i64,
    step: Option<Step>,
}

/// Minimum-cost covering solution, or `None` when the instance is infeasible.
pub fn class_order_optimum(instance: &Instance) -> Result<Option<(Solution, Scalar)>> {
    class_order_optimum_capped(instance, super::DEFAULT_STATE_CAP)
}

pub fn class_order_optimum_capped(
    instance: &Instance,
    cap: u128,
) -> Result<Option<(Solution, Scalar)>> {
    let inst = IntInstance::new(instance)?;
    if inst.total_length() < inst.length {
        return Ok(None);
    }
    if inst.length == 0 {
        return Ok(Some((inst.solution(&inst.x), Scalar::zero())));
    }

    let mut radii: Vec<i64> = inst.r.clone();
    radii.sort_unstable();
    radii.dedup();
    let classes: Vec<Vec<usize>> = radii
        .iter()
        .map(|&r| (0..inst.len()).filter(|&i| inst.r[i] == r).collect())
        .collect();

    let estimate = classes
        .iter()
        .fold((inst.length as u128) + 1, |acc, c| {
            acc.saturating_mul(c.len() as u128 + 1)
        });
    if estimate > cap {
        return Err(Error::ResourceLimit { estimate, cap });
    }

    let start = (0i64, vec![0u16; classes.len()]);
    let mut layers: BTreeMap<i64, HashMap<Vec<u16>, Entry>> = BTreeMap::new();
    layers
        .entry(0)
        .or_default()
        .insert(start.1.clone(), Entry { cost: 0, step: None });
    let mut done: HashMap<(i64, Vec<u16>), Entry> = HashMap::new();
    let mut best: Option<(i64, Step)> = None;

    while let Some((f, layer)) = layers.pop_first() {
        let mut keys: Vec<&Vec<u16>> = layer.keys().collect();
        keys.sort();
        for key in keys {
            let entry = &layer[key];
            if best.as_ref().is_some_and(|(c, _)| entry.cost >= *c) {
                continue;
            }
            for (ci, members) in classes.iter().enumerate() {
                for (pos, &j) in members.iter().enumerate().skip(key[ci] as usize) {
                    let (x, r) = (inst.x[j], inst.r[j]);
                    let mut next_key = key.clone();
                    next_key[ci] = (pos + 1) as u16;
                    for c in (f - r + 1)..=(f + r) {
                        let cost = entry.cost + (c - x).abs();
                        let step = Step {
                            from: (f, key.clone()),
                            sensor: j,
                            center: c,
                        };
                        let reach = c + r;
                        if reach >= inst.length {
                            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                                best = Some((cost, step));
                            }
                            continue;
                        }
                        let slot = layers.entry(reach).or_default();
                        match slot.get(&next_key) {
                            Some(e) if e.cost <= cost => {}
                            _ => {
                                slot.insert(
                                    next_key.clone(),
                                    Entry {
                                        cost,
                                        step: Some(step),
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
        for (key, entry) in layer {
            done.insert((f, key), entry);
        }
    }

    let Some((cost, last)) = best else {
        return Err(Error::Internal(
            "feasible instance produced no covering chain".into(),
        ));
    };
    let mut y = inst.x.clone();
    let mut step = Some(last);
    while let Some(s) = step {
        y[s.sensor] = s.center;
        step = done.get(&s.from).and_then(|e| e.step.clone());
    }
    debug_assert_eq!(inst.cost(&y), cost);
    Ok(Some((inst.solution(&y), Scalar::int(cost))))
}
