//! Running solvers side by side and recording cost ratios.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::{
    brute_force_optimum, class_order_optimum, fpt_optimum, DEFAULT_STATE_CAP,
};
use crate::generators::{gen_fig5, gen_fig6};
use crate::grid::Scaled;
use crate::model::{cost, Instance, Solution};
use crate::order_dp::{dp_eps, dp_optimal};
use crate::scalar::Scalar;
use crate::untangle::untangle;

pub const CSV_HEADER: [&str; 7] = ["instance", "algo", "status", "cost", "ref_cost", "ratio", "time_ms"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algorithm {
    /// Exhaustive search over integer movement vectors.
    BruteForce,
    /// Covering search over radius classes.
    ClassOrder,
    /// Brute force, or the class-order search when brute force hits its cap.
    Oracle,
    Fpt,
    DpOptimal,
    DpEps(Scalar),
    /// Untangled oracle optimum.
    UntangleOracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::BruteForce => f.write_str("brute-force"),
            Algorithm::ClassOrder => f.write_str("class-order"),
            Algorithm::Oracle => f.write_str("oracle"),
            Algorithm::Fpt => f.write_str("fpt"),
            Algorithm::DpOptimal => f.write_str("dp-optimal"),
            Algorithm::DpEps(eps) => write!(f, "dp-eps({eps})"),
            Algorithm::UntangleOracle => f.write_str("untangle-oracle"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let algo = match s {
            "brute-force" => Algorithm::BruteForce,
            "class-order" => Algorithm::ClassOrder,
            "oracle" => Algorithm::Oracle,
            "fpt" => Algorithm::Fpt,
            "dp-optimal" => Algorithm::DpOptimal,
            "untangle-oracle" => Algorithm::UntangleOracle,
            _ => {
                let eps = s
                    .strip_prefix("dp-eps(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| Error::Precondition(format!("unknown algorithm `{s}`")))?;
                let eps = eps
                    .parse()
                    .map_err(|e| Error::Precondition(format!("{e}")))?;
                Algorithm::DpEps(eps)
            }
        };
        Ok(algo)
    }
}

fn on_grid(
    instance: &Instance,
    solve: impl FnOnce(&Instance) -> Result<Option<(Solution, Scalar)>>,
) -> Result<(Solution, Scalar)> {
    let grid = Scaled::of(instance);
    match solve(&grid.instance)? {
        Some((y, c)) => Ok((grid.unscale_solution(&y), grid.unscale(&c))),
        None => Err(Error::Infeasible(
            "total sensor length is shorter than the barrier".into(),
        )),
    }
}

fn oracle(instance: &Instance) -> Result<(Solution, Scalar)> {
    match on_grid(instance, |g| brute_force_optimum(g, DEFAULT_STATE_CAP)) {
        Err(Error::ResourceLimit { .. }) => on_grid(instance, class_order_optimum),
        other => other,
    }
}

fn with_cost(instance: &Instance, solution: Solution) -> Result<(Solution, Scalar)> {
    let c = cost(instance, &solution)?;
    Ok((solution, c))
}

impl Algorithm {
    /// Solution and cost in the instance's own coordinates.
    pub fn run(&self, instance: &Instance) -> Result<(Solution, Scalar)> {
        match self {
            Algorithm::BruteForce => {
                on_grid(instance, |g| brute_force_optimum(g, DEFAULT_STATE_CAP))
            }
            Algorithm::ClassOrder => on_grid(instance, class_order_optimum),
            Algorithm::Oracle => oracle(instance),
            Algorithm::Fpt => on_grid(instance, fpt_optimum),
            Algorithm::DpOptimal => on_grid(instance, |g| {
                let (y, _) = dp_optimal(g)?;
                with_cost(g, y).map(Some)
            }),
            Algorithm::DpEps(eps) => {
                let (y, _) = dp_eps(instance, eps)?;
                with_cost(instance, y)
            }
            Algorithm::UntangleOracle => {
                let (y, _) = oracle(instance)?;
                let (y, _) = untangle(instance, &y)?;
                with_cost(instance, y)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Ok,
    Infeasible,
    ResourceLimit,
    /// Any other solver error, such as a violated precondition.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::ResourceLimit => "resource-limit",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub algo: String,
    pub status: Status,
    pub cost: Option<Scalar>,
    pub ref_cost: Option<Scalar>,
    pub ratio: Option<Scalar>,
    pub time_ms: f64,
}

type Outcome = (Result<(Solution, Scalar)>, f64);

fn timed(algo: &Algorithm, instance: &Instance) -> Outcome {
    let start = Instant::now();
    let result = algo.run(instance);
    (result, start.elapsed().as_secs_f64() * 1000.0)
}

fn record(id: &str, algo: &Algorithm, outcome: &Outcome, ref_cost: Option<&Scalar>) -> RunRecord {
    let (result, time_ms) = outcome;
    let (status, cost) = match result {
        Ok((_, c)) => (Status::Ok, Some(c.clone())),
        Err(Error::Infeasible(_)) => (Status::Infeasible, None),
        Err(Error::ResourceLimit { .. }) => (Status::ResourceLimit, None),
        Err(_) => (Status::Error, None),
    };
    let ratio = match (&cost, ref_cost) {
        (Some(c), Some(r)) if r.is_positive() => Some(c / r),
        _ => None,
    };
    RunRecord {
        instance: id.to_string(),
        algo: algo.to_string(),
        status,
        cost,
        ref_cost: ref_cost.cloned(),
        ratio,
        time_ms: *time_ms,
    }
}

/// One record per algorithm, each compared against `reference`. Solver
/// failures end up in the record's status.
pub fn compare(
    id: &str,
    instance: &Instance,
    algorithms: &[Algorithm],
    reference: &Algorithm,
) -> Vec<RunRecord> {
    let reference_outcome = timed(reference, instance);
    let ref_cost = reference_outcome.0.as_ref().ok().map(|(_, c)| c.clone());
    algorithms
        .iter()
        .map(|algo| {
            if algo == reference {
                record(id, algo, &reference_outcome, ref_cost.as_ref())
            } else {
                record(id, algo, &timed(algo, instance), ref_cost.as_ref())
            }
        })
        .collect()
}

/// Parameterized instance families for ratio sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Big sensor plus a tiling of unit sensors, one point per length.
    Fig5 { rho: Scalar, lengths: Vec<Scalar> },
    /// Big sensor plus unit sensors with small holes, one point per `m`.
    Fig6 {
        rho: Scalar,
        ms: Vec<usize>,
        delta: Scalar,
    },
}

impl Family {
    /// `(id, instance)` per grid point; ids sort in grid order.
    pub fn instances(&self) -> Result<Vec<(String, Instance)>> {
        match self {
            Family::Fig5 { rho, lengths } => lengths
                .iter()
                .enumerate()
                .map(|(k, l)| Ok((format!("fig5/{k:02}/rho={rho};L={l}"), gen_fig5(rho, l)?)))
                .collect(),
            Family::Fig6 { rho, ms, delta } => ms
                .iter()
                .enumerate()
                .map(|(k, &m)| {
                    Ok((
                        format!("fig6/{k:02}/rho={rho};m={m};delta={delta}"),
                        gen_fig6(rho, m, delta)?,
                    ))
                })
                .collect(),
        }
    }

    /// Reference and compared algorithm for the family.
    pub fn algorithms(&self) -> (Algorithm, Algorithm) {
        match self {
            Family::Fig5 { .. } => (Algorithm::Oracle, Algorithm::DpOptimal),
            Family::Fig6 { .. } => (Algorithm::Oracle, Algorithm::UntangleOracle),
        }
    }
}

/// Reference and compared records for every grid point, sorted by
/// `(instance, algo)`.
pub fn ratio_sweep(family: &Family) -> Result<Vec<RunRecord>> {
    let (reference, compared) = family.algorithms();
    let mut records: Vec<RunRecord> = family
        .instances()?
        .iter()
        .flat_map(|(id, inst)| compare(id, inst, &[reference.clone(), compared.clone()], &reference))
        .collect();
    sort_records(&mut records);
    Ok(records)
}

pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by(|a, b| (&a.instance, &a.algo).cmp(&(&b.instance, &b.algo)));
}

/// Ratios of `algo` in record order.
pub fn ratios_of<'a>(records: &'a [RunRecord], algo: &str) -> Vec<Option<&'a Scalar>> {
    records
        .iter()
        .filter(|r| r.algo == algo)
        .map(|r| r.ratio.as_ref())
        .collect()
}

fn opt_field(v: &Option<Scalar>) -> String {
    v.as_ref().map(Scalar::to_string).unwrap_or_default()
}

pub fn write_csv<W: io::Write>(records: &[RunRecord], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.algo.clone(),
            r.status.to_string(),
            opt_field(&r.cost),
            opt_field(&r.ref_cost),
            opt_field(&r.ratio),
            format!("{:.3}", r.time_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
