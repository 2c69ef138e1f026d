//! Problem model: sensors, instances, solutions, coverage and active sets.
//!
//! Sensor indices are zero-based positions in the instance's sorted sensor
//! list. Every check here is decided in exact arithmetic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A sensor at initial center `x` covering `[x - r, x + r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sensor {
    pub x: Scalar,
    pub r: Scalar,
}

impl Sensor {
    pub fn new(x: impl Into<Scalar>, r: impl Into<Scalar>) -> Self {
        Sensor {
            x: x.into(),
            r: r.into(),
        }
    }

    pub fn length(&self) -> Scalar {
        &self.r + &self.r
    }
}

/// A barrier `[0, L]` and its sensors, sorted by `(x, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    length: Scalar,
    sensors: Vec<Sensor>,
}

impl Instance {
    /// Validates and sorts. Use [`Instance::with_permutation`] when the input
    /// order must be recoverable.
    pub fn new(length: impl Into<Scalar>, sensors: Vec<Sensor>) -> Result<Self> {
        Self::with_permutation(length, sensors).map(|(inst, _)| inst)
    }

    /// Returns the instance plus `perm`, where `perm[k]` is the input position
    /// of sorted sensor `k`.
    pub fn with_permutation(
        length: impl Into<Scalar>,
        sensors: Vec<Sensor>,
    ) -> Result<(Self, Vec<usize>)> {
        let length = length.into();
        if length.is_negative() {
            return Err(Error::Precondition(format!(
                "barrier length must be nonnegative, got {length}"
            )));
        }
        if let Some(bad) = sensors.iter().find(|s| !s.r.is_positive()) {
            return Err(Error::Precondition(format!(
                "sensor radius must be positive, got {}",
                bad.r
            )));
        }
        let mut perm: Vec<usize> = (0..sensors.len()).collect();
        perm.sort_by(|&a, &b| {
            (&sensors[a].x, &sensors[a].r)
                .cmp(&(&sensors[b].x, &sensors[b].r))
                .then(a.cmp(&b))
        });
        let sorted = perm.iter().map(|&i| sensors[i].clone()).collect();
        Ok((
            Instance {
                length,
                sensors: sorted,
            },
            perm,
        ))
    }

    pub fn length(&self) -> &Scalar {
        &self.length
    }

    pub fn sensors(&self) -> &[Sensor] {
        &self.sensors
    }

    pub fn len(&self) -> usize {
        self.sensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty()
    }

    /// Every coordinate multiplied by `factor` (> 0). Sort order is preserved.
    pub fn scaled(&self, factor: &Scalar) -> Instance {
        assert!(factor.is_positive(), "scale factor must be positive");
        Instance {
            length: &self.length * factor,
            sensors: self
                .sensors
                .iter()
                .map(|s| Sensor {
                    x: &s.x * factor,
                    r: &s.r * factor,
                })
                .collect(),
        }
    }

    pub fn total_length(&self) -> Scalar {
        self.sensors.iter().map(Sensor::length).sum()
    }
}

/// New sensor centers, index-aligned with [`Instance::sensors`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    pub y: Vec<Scalar>,
}

impl Solution {
    pub fn new(y: Vec<Scalar>) -> Self {
        Solution { y }
    }

    /// Every sensor left where it starts.
    pub fn stationary(instance: &Instance) -> Self {
        Solution {
            y: instance.sensors().iter().map(|s| s.x.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn scaled(&self, factor: &Scalar) -> Solution {
        Solution {
            y: self.y.iter().map(|v| v * factor).collect(),
        }
    }
}

/// Sensor indices whose intervals alone cover the barrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ActiveSet {
    pub indices: BTreeSet<usize>,
}

impl ActiveSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        ActiveSet {
            indices: indices.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }
}

/// Uncovered parts of `[0, L]`: each gap `(a, b)` is a maximal open interval
/// (an uncovered end of the barrier is reported with its endpoint as bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub covered: bool,
    pub gaps: Vec<(Scalar, Scalar)>,
}

impl CoverageReport {
    pub fn total_gap(&self) -> Scalar {
        self.gaps.iter().map(|(a, b)| b - a).sum()
    }
}

pub(crate) fn check_lengths(instance: &Instance, solution: &Solution) -> Result<()> {
    if instance.len() != solution.len() {
        return Err(Error::LengthMismatch {
            expected: instance.len(),
            found: solution.len(),
        });
    }
    Ok(())
}

/// `Σ |y_i - x_i|`.
pub fn cost(instance: &Instance, solution: &Solution) -> Result<Scalar> {
    check_lengths(instance, solution)?;
    Ok(instance
        .sensors()
        .iter()
        .zip(&solution.y)
        .map(|(s, y)| (y - &s.x).abs())
        .sum())
}

/// Number of sensors whose position differs from their start.
pub fn movers(instance: &Instance, solution: &Solution) -> Result<usize> {
    check_lengths(instance, solution)?;
    Ok(instance
        .sensors()
        .iter()
        .zip(&solution.y)
        .filter(|(s, y)| &s.x != *y)
        .count())
}

/// Sweep the given sensors' closed intervals, clipped to the barrier.
fn gaps_of(
    instance: &Instance,
    solution: &Solution,
    indices: impl Iterator<Item = usize>,
) -> Vec<(Scalar, Scalar)> {
    let length = instance.length();
    let zero = Scalar::zero();
    if length.is_zero() {
        return Vec::new();
    }
    let mut spans: Vec<(Scalar, Scalar)> = indices
        .filter_map(|i| {
            let r = &instance.sensors()[i].r;
            let lo = (&solution.y[i] - r).max(zero.clone());
            let hi = (&solution.y[i] + r).min(length.clone());
            (lo <= hi).then_some((lo, hi))
        })
        .collect();
    spans.sort();

    let mut gaps = Vec::new();
    let mut reach = zero;
    for (lo, hi) in spans {
        if lo > reach {
            gaps.push((reach.clone(), lo));
        }
        if hi > reach {
            reach = hi;
        }
    }
    if &reach < length {
        gaps.push((reach, length.clone()));
    }
    gaps
}

pub fn verify_coverage(instance: &Instance, solution: &Solution) -> Result<CoverageReport> {
    check_lengths(instance, solution)?;
    let gaps = gaps_of(instance, solution, 0..instance.len());
    Ok(CoverageReport {
        covered: gaps.is_empty(),
        gaps,
    })
}

/// Whether the intervals of `indices` alone cover the barrier.
pub fn covers_with(
    instance: &Instance,
    solution: &Solution,
    indices: impl IntoIterator<Item = usize>,
) -> Result<bool> {
    check_lengths(instance, solution)?;
    Ok(gaps_of(instance, solution, indices.into_iter()).is_empty())
}

/// Sensors may move anywhere, so total length is the only obstruction.
pub fn is_feasible(instance: &Instance) -> bool {
    &instance.total_length() >= instance.length()
}

/// An inclusion-minimal active set. Indices are tried for removal in
/// decreasing order of radius, higher index first among equal radii.
pub fn minimal_active_set(instance: &Instance, solution: &Solution) -> Result<ActiveSet> {
    minimal_active_subset(instance, solution, 0..instance.len())
}

/// Like [`minimal_active_set`], restricted to the candidates in `within`.
pub fn minimal_active_subset(
    instance: &Instance,
    solution: &Solution,
    within: impl IntoIterator<Item = usize>,
) -> Result<ActiveSet> {
    check_lengths(instance, solution)?;
    let mut keep: BTreeSet<usize> = within.into_iter().collect();
    if !gaps_of(instance, solution, keep.iter().copied()).is_empty() {
        return Err(Error::Infeasible(
            "solution does not cover the barrier".into(),
        ));
    }
    let mut order: Vec<usize> = keep.iter().copied().collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&instance.sensors()[a].r, &instance.sensors()[b].r);
        rb.cmp(ra).then(b.cmp(&a))
    });
    for i in order {
        keep.remove(&i);
        if !gaps_of(instance, solution, keep.iter().copied()).is_empty() {
            keep.insert(i);
        }
    }
    Ok(ActiveSet { indices: keep })
}

/// True iff `y` is strictly increasing over `active` in index order.
pub fn is_order_preserving(
    instance: &Instance,
    solution: &Solution,
    active: &ActiveSet,
) -> Result<bool> {
    check_lengths(instance, solution)?;
    if let Some(&bad) = active.indices.iter().find(|&&i| i >= instance.len()) {
        return Err(Error::Precondition(format!("active index {bad} out of range")));
    }
    let ys: Vec<&Scalar> = active.iter().map(|i| &solution.y[i]).collect();
    Ok(ys.windows(2).all(|w| w[0] < w[1]))
}

/// `r_max / r_min`.
pub fn rho(instance: &Instance) -> Result<Scalar> {
    let radii = instance.sensors().iter().map(|s| &s.r);
    let max = radii.clone().max().ok_or(Error::EmptyInstance)?;
    let min = radii.min().ok_or(Error::EmptyInstance)?;
    Ok(max / min)
}

/// Largest number of intervals of `active` sharing a single barrier point.
///
/// Depth only changes at endpoints, so checking every endpoint and every
/// midpoint between consecutive endpoints is exhaustive.
pub fn max_stabbing_depth(instance: &Instance, solution: &Solution, active: &ActiveSet) -> usize {
    let spans: Vec<(Scalar, Scalar)> = active
        .iter()
        .map(|i| {
            let r = &instance.sensors()[i].r;
            (&solution.y[i] - r, &solution.y[i] + r)
        })
        .collect();
    let zero = Scalar::zero();
    let length = instance.length();
    let mut events: Vec<Scalar> = spans
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .chain([zero.clone(), length.clone()])
        .filter(|p| p >= &zero && p <= length)
        .collect();
    events.sort();
    events.dedup();
    let mut probes = events.clone();
    for w in events.windows(2) {
        probes.push((&w[0] + &w[1]) / Scalar::int(2));
    }
    probes
        .iter()
        .map(|p| spans.iter().filter(|(a, b)| a <= p && p <= b).count())
        .max()
        .unwrap_or(0)
}
