//! Instance families, the exact-cover reduction and seeded random instances.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Sensor, Solution};
use crate::scalar::Scalar;

/// One sensor of radius `rho` at the origin plus unit-radius sensors tiling
/// `[0, L - 2·rho]`.
pub fn gen_fig5(rho: &Scalar, length: &Scalar) -> Result<Instance> {
    if rho < &Scalar::one() {
        return Err(Error::Precondition(format!("rho must be at least 1, got {rho}")));
    }
    let rest = length - rho * Scalar::int(2);
    let smalls = &rest / Scalar::int(2);
    if !smalls.is_positive() || !smalls.is_integer() {
        return Err(Error::Precondition(format!(
            "(L - 2 rho) / 2 must be a positive integer, got {smalls}"
        )));
    }
    let count = smalls
        .to_i64()
        .ok_or_else(|| Error::Precondition("too many sensors".into()))?;
    let mut sensors = vec![Sensor::new(0, rho.clone())];
    sensors.extend((0..count).map(|i| Sensor::new(2 * i + 1, 1)));
    Instance::new(length.clone(), sensors)
}

/// One sensor of radius `rho` at the origin plus `m` unit-radius sensors at
/// `1 + (i-1)(2 + delta)`, on `L = 2m + (m-1)·delta`. The small sensors
/// leave `m - 1` holes of width `delta`.
pub fn gen_fig6(rho: &Scalar, m: usize, delta: &Scalar) -> Result<Instance> {
    if rho < &Scalar::one() {
        return Err(Error::Precondition(format!("rho must be at least 1, got {rho}")));
    }
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    if !delta.is_positive() {
        return Err(Error::Precondition(format!("delta must be positive, got {delta}")));
    }
    let m_s = Scalar::int(m as i64);
    if &m_s * delta >= rho * Scalar::int(2) {
        return Err(Error::Precondition(format!(
            "m·delta must stay below 2·rho (m = {m}, delta = {delta}, rho = {rho})"
        )));
    }
    let pitch = Scalar::int(2) + delta;
    let mut sensors = vec![Sensor::new(0, rho.clone())];
    sensors.extend((0..m).map(|i| Sensor::new(Scalar::one() + &pitch * Scalar::int(i as i64), 1)));
    let length = &m_s * Scalar::int(2) + (&m_s - Scalar::one()) * delta;
    Instance::new(length, sensors)
}

/// Universe `{1..m}`, a family of subsets and a size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCoverInstance {
    pub m: usize,
    pub sets: Vec<BTreeSet<usize>>,
    pub k: usize,
}

impl ExactCoverInstance {
    pub fn new(m: usize, sets: Vec<BTreeSet<usize>>, k: usize) -> Result<Self> {
        let ec = ExactCoverInstance { m, sets, k };
        ec.validate()?;
        Ok(ec)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, set) in self.sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::Precondition(format!("set {} is empty", i + 1)));
            }
            if let Some(&u) = set.iter().find(|&&u| u == 0 || u > self.m) {
                return Err(Error::Precondition(format!(
                    "set {} contains {u}, outside 1..={}",
                    i + 1,
                    self.m
                )));
            }
        }
        Ok(())
    }
}

/// Barrier instance built from an exact-cover instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub budget: Scalar,
    pub k: usize,
    /// `source_set[s]` is the (0-based) set behind sorted sensor `s`.
    pub source_set: Vec<usize>,
}

impl ReductionOutput {
    /// Sorted sensor index of each set.
    pub fn sensor_of_set(&self) -> Vec<usize> {
        let mut inverse = vec![0; self.source_set.len()];
        for (s, &set) in self.source_set.iter().enumerate() {
            inverse[set] = s;
        }
        inverse
    }
}

fn pow(base: usize, exp: usize) -> Scalar {
    Scalar::from(num_traits::pow(BigInt::from(base), exp))
}

/// Sensor `i` gets `2r_i = Σ_{u_j ∈ S_i} (n+1)^(j-1)` and sits left of the
/// origin at `x_i = -r_i - Σ_{u_j ∈ S_i} (n+1)^(j+m)`;
/// `L = Σ_j (n+1)^(j-1)` and `B = Σ_j (n+1)^(j+m) + k·L`.
pub fn reduce_exact_cover(ec: &ExactCoverInstance) -> Result<ReductionOutput> {
    ec.validate()?;
    let base = ec.sets.len() + 1;
    let m = ec.m;
    let sensors: Vec<Sensor> = ec
        .sets
        .iter()
        .map(|set| {
            let width: Scalar = set.iter().map(|&j| pow(base, j - 1)).sum();
            let r = width / Scalar::int(2);
            let far: Scalar = set.iter().map(|&j| pow(base, j + m)).sum();
            let x = -&r - far;
            Sensor::new(x, r)
        })
        .collect();
    let length: Scalar = (1..=m).map(|j| pow(base, j - 1)).sum();
    let far_total: Scalar = (1..=m).map(|j| pow(base, j + m)).sum();
    let budget = far_total + Scalar::int(ec.k as i64) * &length;
    let (instance, perm) = Instance::with_permutation(length, sensors)?;
    Ok(ReductionOutput {
        instance,
        budget,
        k: ec.k,
        source_set: perm,
    })
}

/// Moves the sensors of `cover` (set indices) onto the barrier side by side
/// from 0, in the given order; every other sensor stays put.
pub fn cover_witness(reduction: &ReductionOutput, cover: &[usize]) -> Solution {
    let inst = &reduction.instance;
    let sensor_of = reduction.sensor_of_set();
    let mut solution = Solution::stationary(inst);
    let mut left = Scalar::zero();
    for &set in cover {
        let s = sensor_of[set];
        let r = &inst.sensors()[s].r;
        solution.y[s] = &left + r;
        left = &left + r * Scalar::int(2);
    }
    solution
}

/// Largest family size the exact-cover decider accepts.
pub const MAX_EXACT_COVER_SETS: usize = 24;

/// Some family of at most `k` pairwise disjoint sets whose union is the
/// universe (0-based set indices), smallest first in enumeration order.
pub fn find_exact_cover(ec: &ExactCoverInstance) -> Result<Option<Vec<usize>>> {
    ec.validate()?;
    let n = ec.sets.len();
    if n > MAX_EXACT_COVER_SETS {
        return Err(Error::ResourceLimit {
            estimate: 1u128 << n,
            cap: 1u128 << MAX_EXACT_COVER_SETS,
        });
    }
    let masks: Vec<u64> = ec
        .sets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &u| acc | 1 << (u - 1)))
        .collect();
    let universe = if ec.m == 0 { 0 } else { u64::MAX >> (64 - ec.m) };
    for family in 0u64..(1 << n) {
        if family.count_ones() as usize > ec.k {
            continue;
        }
        let mut union = 0u64;
        let mut disjoint = true;
        for (i, &mask) in masks.iter().enumerate() {
            if family >> i & 1 == 1 {
                disjoint &= union & mask == 0;
                union |= mask;
            }
        }
        if disjoint && union == universe {
            return Ok(Some((0..n).filter(|&i| family >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

pub fn solve_exact_cover_brute(ec: &ExactCoverInstance) -> Result<bool> {
    if ec.m > 63 {
        return Err(Error::Precondition("universe too large for the decider".into()));
    }
    find_exact_cover(ec).map(|c| c.is_some())
}

/// Uniform integer instance: for each sensor `x` is drawn from `x_range`,
/// then `r` from `[r_min, r_max]`, from a ChaCha8 stream seeded with `seed`.
pub fn gen_random(
    n: usize,
    length: i64,
    r_min: i64,
    r_max: i64,
    x_range: (i64, i64),
    seed: u64,
) -> Result<Instance> {
    if r_min <= 0 || r_min > r_max {
        return Err(Error::Precondition(format!(
            "need 0 < r_min <= r_max, got [{r_min}, {r_max}]"
        )));
    }
    if x_range.0 > x_range.1 {
        return Err(Error::Precondition(format!(
            "empty x range [{}, {}]",
            x_range.0, x_range.1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sensors = (0..n)
        .map(|_| {
            let x = rng.gen_range(x_range.0..=x_range.1);
            let r = rng.gen_range(r_min..=r_max);
            Sensor::new(x, r)
        })
        .collect();
    Instance::new(length, sensors)
}
