//! Integer views of instances.
//!
//! The exact solvers work on integral data. Rational instances are scaled by
//! the least common denominator of `L`, every `x_i` and every `r_i`; on that
//! grid an optimal solution with integral centers exists, so searching integer
//! positions loses nothing.

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::scalar::{common_denominator, Scalar};

/// An instance rescaled onto the integer grid, with the factor to undo it.
#[derive(Debug, Clone)]
pub struct Scaled {
    pub instance: Instance,
    pub factor: Scalar,
}

impl Scaled {
    pub fn of(instance: &Instance) -> Scaled {
        let factor = integral_scale(instance);
        Scaled {
            instance: instance.scaled(&factor),
            factor,
        }
    }

    /// A budget in original units, rounded down onto the grid.
    pub fn budget(&self, budget: &Scalar) -> Scalar {
        (budget * &self.factor).floor()
    }

    pub fn unscale_solution(&self, solution: &Solution) -> Solution {
        solution.scaled(&(Scalar::one() / &self.factor))
    }

    pub fn unscale(&self, value: &Scalar) -> Scalar {
        value / &self.factor
    }
}

/// Smallest positive integer that makes every coordinate of `instance` integral.
pub fn integral_scale(instance: &Instance) -> Scalar {
    let values = std::iter::once(instance.length())
        .chain(instance.sensors().iter().flat_map(|s| [&s.x, &s.r]));
    Scalar::from(common_denominator(values))
}

/// Plain integer copy of an integral instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntInstance {
    pub length: i64,
    pub x: Vec<i64>,
    pub r: Vec<i64>,
}

impl IntInstance {
    pub fn new(instance: &Instance) -> Result<Self> {
        let int = |v: &Scalar, what: &str| {
            v.to_i64().ok_or_else(|| {
                Error::Precondition(format!(
                    "{what} {v} is not an integer (scale the instance first)"
                ))
            })
        };
        Ok(IntInstance {
            length: int(instance.length(), "barrier length")?,
            x: instance
                .sensors()
                .iter()
                .map(|s| int(&s.x, "position"))
                .collect::<Result<_>>()?,
            r: instance
                .sensors()
                .iter()
                .map(|s| int(&s.r, "radius"))
                .collect::<Result<_>>()?,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn solution(&self, y: &[i64]) -> Solution {
        Solution::new(y.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn cost(&self, y: &[i64]) -> i64 {
        self.x.iter().zip(y).map(|(x, y)| (x - y).abs()).sum()
    }

    /// Gaps of `[0, L]` under positions `y`, as `(start, end)` pairs.
    pub fn gaps(&self, y: &[i64]) -> Vec<(i64, i64)> {
        if self.length == 0 {
            return Vec::new();
        }
        let mut spans: Vec<(i64, i64)> = y
            .iter()
            .zip(&self.r)
            .map(|(&c, &r)| ((c - r).max(0), (c + r).min(self.length)))
            .filter(|(lo, hi)| lo <= hi)
            .collect();
        spans.sort_unstable();
        let mut gaps = Vec::new();
        let mut reach = 0;
        for (lo, hi) in spans {
            if lo > reach {
                gaps.push((reach, lo));
            }
            reach = reach.max(hi);
        }
        if reach < self.length {
            gaps.push((reach, self.length));
        }
        gaps
    }

    pub fn covers(&self, y: &[i64]) -> bool {
        if self.length == 0 {
            return true;
        }
        let mut spans: Vec<(i64, i64)> = y
            .iter()
            .zip(&self.r)
            .map(|(&c, &r)| (c - r, c + r))
            .collect();
        spans.sort_unstable();
        let mut reach = 0;
        for (lo, hi) in spans {
            if lo > reach {
                return false;
            }
            reach = reach.max(hi);
            if reach >= self.length {
                return true;
            }
        }
        false
    }

    pub fn total_length(&self) -> i64 {
        self.r.iter().map(|r| 2 * r).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sensor;

    #[test]
    fn half_integer_radii_scale_by_two() {
        let inst = Instance::new(
            5,
            vec![
                Sensor::new(Scalar::ratio(-129, 2), Scalar::ratio(1, 2)),
                Sensor::new(-258, 2),
            ],
        )
        .unwrap();
        let scaled = Scaled::of(&inst);
        assert_eq!(scaled.factor, Scalar::int(2));
        let int = IntInstance::new(&scaled.instance).unwrap();
        assert_eq!(int.length, 10);
        assert_eq!(int.r, vec![4, 1]);
        assert_eq!(scaled.budget(&Scalar::ratio(7, 4)), Scalar::int(3));
        assert!(IntInstance::new(&inst).is_err());
    }

    #[test]
    fn integer_coverage() {
        let inst = IntInstance {
            length: 4,
            x: vec![0, 5],
            r: vec![1, 1],
        };
        assert!(inst.covers(&[1, 3]));
        assert!(!inst.covers(&[0, 5]));
        assert_eq!(inst.gaps(&[0, 5]), vec![(1, 4)]);
        assert_eq!(inst.cost(&[1, 3]), 3);
    }
}
