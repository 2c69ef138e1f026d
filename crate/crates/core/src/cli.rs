//! `barrier` command line: instance generation, solving, verification and
//! ratio benchmarks.
//!
//! Exit codes: 0 success, 1 no solution (or a failed check), 2 usage or
//! input error, 3 search cap hit.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::exact::{brute_force, brute_force_optimum, fpt_optimum, fpt_solve, DEFAULT_STATE_CAP};
use crate::format::{parse_instance, parse_solution, write_instance, write_solution};
use crate::generators::{gen_fig5, gen_fig6, gen_random, reduce_exact_cover, ExactCoverInstance};
use crate::grid::Scaled;
use crate::harness::{compare, ratio_sweep, sort_records, write_csv, Algorithm, Family, RunRecord};
use crate::model::{cost, movers, verify_coverage, Instance, Solution};
use crate::order_dp::{dp_eps, dp_exact, dp_optimal};
use crate::scalar::Scalar;
use crate::untangle::untangle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ABSENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "barrier", version, about = "Min-sum barrier coverage on a line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Fig5,
    Fig6,
    Random,
    ExactCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveAlgo {
    Oracle,
    DpExact,
    DpEps,
    Fpt,
    UntangleOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    Fig5,
    Fig6,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance file.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        #[arg(long)]
        rho: Option<Scalar>,
        /// Barrier length (fig5, random).
        #[arg(long)]
        length: Option<Scalar>,
        /// Number of small sensors (fig6).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        delta: Option<Scalar>,
        /// Number of sensors (random).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r_min: i64,
        #[arg(long, default_value_t = 3)]
        r_max: i64,
        #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
        x_min: i64,
        #[arg(long, default_value_t = 15, allow_negative_numbers = true)]
        x_max: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON exact-cover input `{"m": .., "sets": [[..], ..], "k": ..}`.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Output file; stdout when absent. Exact-cover runs also write
        /// `<out>.json` with the budget and mover bound.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and print a solution file.
    Solve {
        #[arg(long, value_enum)]
        algo: SolveAlgo,
        #[arg(long)]
        budget: Option<Scalar>,
        #[arg(long)]
        eps: Option<Scalar>,
        #[arg(long)]
        out: Option<PathBuf>,
        input: PathBuf,
    },
    /// Check a solution against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        max_cost: Option<Scalar>,
        #[arg(long)]
        max_movers: Option<usize>,
    },
    /// Ratio experiments, written as CSV.
    Bench {
        #[arg(long, value_enum, conflicts_with = "dir")]
        family: Option<BenchFamily>,
        /// Directory of `.bc` instance files.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value = "2")]
        rho: Scalar,
        #[arg(long, value_delimiter = ',', default_value = "8,12,16,20")]
        lengths: Vec<Scalar>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        ms: Vec<usize>,
        #[arg(long, default_value = "1/8")]
        delta: Scalar,
        /// Algorithms for `--dir` runs.
        #[arg(long, value_delimiter = ',', default_value = "dp-optimal,fpt")]
        algos: Vec<String>,
        #[arg(long, default_value = "oracle")]
        reference: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with an exit code and a message for stderr.
#[derive(Debug)]
pub struct Exit {
    pub code: i32,
    pub message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) => EXIT_ABSENT,
            Error::ResourceLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Exit>;

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Exit> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Exit::usage(e.to_string())),
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Exit> {
    value.ok_or_else(|| Exit::usage(format!("--{flag} is required here")))
}

#[derive(Serialize)]
struct Sidecar {
    budget: String,
    k: usize,
    source_set: Vec<usize>,
}

fn cmd_gen(cmd: Command, stdout: &mut dyn Write) -> CmdResult {
    let Command::Gen {
        family,
        rho,
        length,
        m,
        delta,
        n,
        r_min,
        r_max,
        x_min,
        x_max,
        seed,
        spec,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let (instance, header, sidecar) = match family {
        GenFamily::Fig5 => {
            let (rho, length) = (need(rho, "rho")?, need(length, "length")?);
            let inst = gen_fig5(&rho, &length)?;
            (inst, format!("# fig5 rho={rho} L={length}\n"), None)
        }
        GenFamily::Fig6 => {
            let (rho, m, delta) = (need(rho, "rho")?, need(m, "m")?, need(delta, "delta")?);
            let inst = gen_fig6(&rho, m, &delta)?;
            (inst, format!("# fig6 rho={rho} m={m} delta={delta}\n"), None)
        }
        GenFamily::Random => {
            let n = need(n, "n")?;
            let length = need(length, "length")?;
            let length = length
                .to_i64()
                .filter(|_| length.is_integer())
                .ok_or_else(|| Exit::usage("--length must be an integer for random instances"))?;
            let inst = gen_random(n, length, r_min, r_max, (x_min, x_max), seed)?;
            let header = format!(
                "# random n={n} L={length} r=[{r_min},{r_max}] x=[{x_min},{x_max}] seed={seed}\n"
            );
            (inst, header, None)
        }
        GenFamily::ExactCover => {
            let path = need(spec, "spec")?;
            let ec: ExactCoverInstance = serde_json::from_str(&read(&path)?)
                .map_err(|e| Exit::usage(format!("{}: {e}", path.display())))?;
            let red = reduce_exact_cover(&ec)?;
            let header = format!("# exact-cover budget={} k={}\n", red.budget, red.k);
            let sidecar = Sidecar {
                budget: red.budget.to_string(),
                k: red.k,
                source_set: red.source_set.clone(),
            };
            (red.instance, header, Some(sidecar))
        }
    };
    let text = header + &write_instance(&instance);
    emit(out.as_deref(), &text, stdout)?;
    if let (Some(side), Some(out)) = (sidecar, out) {
        let mut path = out.into_os_string();
        path.push(".json");
        let json = serde_json::to_string_pretty(&side).expect("sidecar serializes");
        fs::write(&path, json + "\n").map_err(|e| Exit::usage(e.to_string()))?;
    }
    Ok(EXIT_OK)
}

fn solve(
    algo: SolveAlgo,
    instance: &Instance,
    budget: Option<&Scalar>,
    eps: Option<&Scalar>,
) -> Result<Option<Solution>, Exit> {
    let grid = Scaled::of(instance);
    let g = &grid.instance;
    let scaled_budget = budget.map(|b| grid.budget(b));
    let found = match algo {
        SolveAlgo::Oracle => match &scaled_budget {
            Some(b) => brute_force(g, b, DEFAULT_STATE_CAP)?,
            None => brute_force_optimum(g, DEFAULT_STATE_CAP)?,
        }
        .map(|(y, _)| grid.unscale_solution(&y)),
        SolveAlgo::Fpt => match &scaled_budget {
            Some(b) => fpt_solve(g, b)?,
            None => fpt_optimum(g)?,
        }
        .map(|(y, _)| grid.unscale_solution(&y)),
        SolveAlgo::DpExact => {
            let found = match &scaled_budget {
                Some(b) => dp_exact(g, b)?,
                None => Some(dp_optimal(g)?),
            };
            found.map(|(y, _)| grid.unscale_solution(&y))
        }
        SolveAlgo::DpEps => {
            let eps = need(eps, "eps")?;
            let (y, _) = dp_eps(instance, eps)?;
            let within = budget.is_none_or(|b| cost(instance, &y).is_ok_and(|c| &c <= b));
            within.then_some(y)
        }
        SolveAlgo::UntangleOracle => match &scaled_budget {
            Some(b) => match brute_force(g, b, DEFAULT_STATE_CAP)? {
                Some((y, _)) => Some(untangle(instance, &grid.unscale_solution(&y))?.0),
                None => None,
            },
            None => Some(Algorithm::UntangleOracle.run(instance)?.0),
        },
    };
    Ok(found)
}

fn cmd_solve(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let Command::Solve {
        algo,
        budget,
        eps,
        out,
        input,
    } = cmd
    else {
        unreachable!()
    };
    let (instance, _) = parse_instance(&read(&input)?)?;
    if budget.as_ref().is_some_and(Scalar::is_negative) {
        return Err(Exit::usage("--budget must be nonnegative"));
    }
    match solve(algo, &instance, budget.as_ref(), eps.as_ref())? {
        Some(y) => {
            emit(out.as_deref(), &write_solution(&instance, &y)?, stdout)?;
            Ok(EXIT_OK)
        }
        None => {
            let _ = writeln!(stderr, "no solution");
            Ok(EXIT_ABSENT)
        }
    }
}

fn cmd_verify(cmd: Command, stdout: &mut dyn Write) -> CmdResult {
    let Command::Verify {
        instance,
        solution,
        max_cost,
        max_movers,
    } = cmd
    else {
        unreachable!()
    };
    let (inst, _) = parse_instance(&read(&instance)?)?;
    let sol = parse_solution(&read(&solution)?, &inst)?;
    let report = verify_coverage(&inst, &sol)?;
    let c = cost(&inst, &sol)?;
    let k = movers(&inst, &sol)?;
    let mut text = format!("covered: {}\n", if report.covered { "yes" } else { "no" });
    for (a, b) in &report.gaps {
        text += &format!("gap: ({a}, {b})\n");
    }
    text += &format!("cost: {c}\nmovers: {k}\n");
    let mut ok = report.covered;
    if let Some(limit) = &max_cost {
        let fits = &c <= limit;
        text += &format!("cost <= {limit}: {}\n", if fits { "yes" } else { "no" });
        ok &= fits;
    }
    if let Some(limit) = max_movers {
        let fits = k <= limit;
        text += &format!("movers <= {limit}: {}\n", if fits { "yes" } else { "no" });
        ok &= fits;
    }
    emit(None, &text, stdout)?;
    Ok(if ok { EXIT_OK } else { EXIT_ABSENT })
}

fn bench_dir(dir: &Path, algos: &[Algorithm], reference: &Algorithm) -> Result<Vec<RunRecord>, Exit> {
    let entries = fs::read_dir(dir).map_err(|e| Exit::usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bc"))
        .collect();
    paths.sort();
    let mut records = Vec::new();
    for path in paths {
        let (inst, _) = parse_instance(&read(&path)?)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        records.extend(compare(&id, &inst, algos, reference));
    }
    sort_records(&mut records);
    Ok(records)
}

fn cmd_bench(cmd: Command, stdout: &mut dyn Write) -> CmdResult {
    let Command::Bench {
        family,
        dir,
        rho,
        lengths,
        ms,
        delta,
        algos,
        reference,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let records = match (family, dir) {
        (Some(BenchFamily::Fig5), None) => ratio_sweep(&Family::Fig5 { rho, lengths })?,
        (Some(BenchFamily::Fig6), None) => ratio_sweep(&Family::Fig6 { rho, ms, delta })?,
        (None, Some(dir)) => {
            let algos = algos
                .iter()
                .map(|a| a.parse())
                .collect::<Result<Vec<Algorithm>, Error>>()?;
            let reference: Algorithm = reference.parse()?;
            bench_dir(&dir, &algos, &reference)?
        }
        _ => return Err(Exit::usage("give exactly one of --family or --dir")),
    };
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).map_err(|e| Exit::usage(e.to_string()))?;
    emit(out.as_deref(), &String::from_utf8_lossy(&buf), stdout)?;
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing normal output to `stdout` and diagnostics
/// to `stderr`. Returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cli.command {
        cmd @ Command::Gen { .. } => cmd_gen(cmd, stdout),
        cmd @ Command::Solve { .. } => cmd_solve(cmd, stdout, stderr),
        cmd @ Command::Verify { .. } => cmd_verify(cmd, stdout),
        cmd @ Command::Bench { .. } => cmd_bench(cmd, stdout),
    };
    match result {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(stderr, "error: {}", exit.message);
            exit.code
        }
    }
}

/// Parses process arguments and runs; clap usage errors exit with 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run(cli, &mut io::stdout().lock(), &mut io::stderr().lock())
}
