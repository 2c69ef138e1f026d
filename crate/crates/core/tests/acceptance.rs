//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use barrier_core::exact::{
    brute_force, class_order_optimum, fpt_solve, kmove_brute_force, KMoveQuery, DEFAULT_STATE_CAP,
};
use barrier_core::generators::{
    reduce_exact_cover, solve_exact_cover_brute, ExactCoverInstance,
};
use barrier_core::grid::Scaled;
use barrier_core::harness::{ratio_sweep, ratios_of, Algorithm, Family, Status};
use barrier_core::model::{
    cost, is_feasible, is_order_preserving, max_stabbing_depth, minimal_active_set,
    verify_coverage, Instance, Solution,
};
use barrier_core::order_dp::{dp_eps, dp_optimal, rounded_cost, EpsParams};
use barrier_core::untangle::untangle;
use barrier_core::{Error, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn integral(y: &Solution) -> bool {
    y.y.iter().all(Scalar::is_integer)
}

fn check_witness(inst: &Instance, y: &Solution, claimed: &Scalar, budget: &Scalar) -> bool {
    verify_coverage(inst, y).unwrap().covered
        && &cost(inst, y).unwrap() == claimed
        && claimed <= budget
}

fn oracle_equivalence(corpus: &[(String, Instance)]) -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut present = 0;
    for (id, inst) in corpus {
        for b in 0..=common::MAX_BUDGET {
            let budget = Scalar::int(b);
            let oracle = brute_force(inst, &budget, DEFAULT_STATE_CAP)
                .map_err(|e| format!("{id} B={b}: brute force failed: {e}"))?;
            let fpt = fpt_solve(inst, &budget).map_err(|e| format!("{id} B={b}: {e}"))?;
            cases += 1;
            match (&oracle, &fpt) {
                (None, None) => {}
                (Some((_, c1)), Some((y, c2))) if c1 == c2 => {
                    if !check_witness(inst, y, c2, &budget) {
                        return Err(format!("{id} B={b}: invalid fpt witness"));
                    }
                    present += 1;
                }
                _ => {
                    return Err(format!(
                        "{id} B={b}: brute force {:?} vs fpt {:?}",
                        oracle.map(|o| o.1),
                        fpt.map(|f| f.1)
                    ))
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}, over 5 minutes"));
    }
    Ok(format!(
        "{} instances, {cases} budget cases ({present} with a solution) agree; {elapsed:.2?}",
        corpus.len()
    ))
}

fn order_preserving_optimality(corpus: &[(String, Instance)]) -> Verdict {
    let mut feasible = 0;
    for (id, inst) in corpus {
        let expected = common::order_preserving_brute(inst);
        match (dp_optimal(inst), expected) {
            (Err(Error::Infeasible(_)), None) => {}
            (Ok((y, active)), Some(best)) => {
                let c = cost(inst, &y).unwrap();
                if c != Scalar::int(best) {
                    return Err(format!("{id}: dp {c} vs exhaustive {best}"));
                }
                if !is_order_preserving(inst, &y, &active).unwrap()
                    || !verify_coverage(inst, &y).unwrap().covered
                {
                    return Err(format!("{id}: dp output is not an order-preserving cover"));
                }
                feasible += 1;
            }
            (got, want) => return Err(format!("{id}: dp {got:?} vs exhaustive {want:?}")),
        }
    }
    Ok(format!("{feasible} feasible instances, exact agreement"))
}

fn eps_guarantee(corpus: &[(String, Instance)]) -> Verdict {
    let mut checked = 0;
    for eps in [Scalar::one(), Scalar::ratio(1, 2), Scalar::ratio(1, 4)] {
        for (id, inst) in corpus {
            let Some(best) = common::order_preserving_brute(inst) else {
                if !matches!(dp_eps(inst, &eps), Err(Error::Infeasible(_))) {
                    return Err(format!("{id}: infeasible instance not reported"));
                }
                continue;
            };
            let (y, active) = dp_eps(inst, &eps).map_err(|e| format!("{id}: {e}"))?;
            let c = cost(inst, &y).unwrap();
            let opt = Scalar::int(best);
            let upper = (Scalar::one() + &eps) * &opt;
            if c < opt || c > upper {
                return Err(format!("{id} eps={eps}: cost {c} outside [{opt}, {upper}]"));
            }
            if !is_order_preserving(inst, &y, &active).unwrap() {
                return Err(format!("{id} eps={eps}: not order-preserving"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, eps) runs within [OPT_op, (1+eps) OPT_op]"))
}

fn random_ratio(rng: &mut ChaCha8Rng, max: i64) -> Scalar {
    let den = rng.gen_range(1..=6);
    Scalar::ratio(rng.gen_range(-max * den..=max * den), den)
}

fn rounding_sandwich(corpus: &[(String, Instance)]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs = 1000;
    for k in 0..pairs {
        let inst = &corpus[k % corpus.len()].1;
        let n = inst.len();
        let y = Solution::new(
            inst.sensors()
                .iter()
                .map(|s| {
                    if rng.gen_bool(0.2) {
                        s.x.clone()
                    } else {
                        &s.x + random_ratio(&mut rng, 10)
                    }
                })
                .collect(),
        );
        let eps = Scalar::ratio(1, rng.gen_range(1..=8));
        let guess = Scalar::ratio(rng.gen_range(1..=200), rng.gen_range(1..=10));
        let q = EpsParams::new(eps, guess, n).unwrap().q;
        let c = cost(inst, &y).unwrap();
        let scaled = &q * rounded_cost(inst, &y, &q).unwrap();
        let upper = &c + &q * Scalar::int(n as i64);
        if !(c <= scaled && scaled <= upper) {
            return Err(format!("pair {k}: {c} <= {scaled} <= {upper} fails (q = {q})"));
        }
    }
    Ok(format!("{pairs} pairs satisfy cost <= q cost' <= cost + qn"))
}

fn fig5_trend() -> Verdict {
    let lengths = [8, 12, 16, 20, 40];
    let family = Family::Fig5 {
        rho: Scalar::int(2),
        lengths: lengths.map(Scalar::int).to_vec(),
    };
    let records = ratio_sweep(&family).map_err(|e| e.to_string())?;
    if let Some(bad) = records.iter().find(|r| r.status != Status::Ok) {
        return Err(format!("{} {}: {}", bad.instance, bad.algo, bad.status));
    }
    for (rec, l) in records.iter().filter(|r| r.algo == "oracle").zip(lengths) {
        if rec.cost != Some(Scalar::int(l - 2)) {
            return Err(format!("L={l}: optimum {:?}, expected {}", rec.cost, l - 2));
        }
    }
    let ratios: Vec<Scalar> = ratios_of(&records, "dp-optimal")
        .into_iter()
        .map(|r| r.cloned().unwrap())
        .collect();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{:.4}", r.to_f64())).collect();
    if ratios.windows(2).any(|w| w[1] < w[0]) {
        return Err(format!("ratios not nondecreasing: {shown:?}"));
    }
    let last = ratios.last().unwrap();
    if last < &Scalar::ratio(9, 5) {
        return Err(format!("ratio at L=40 is {last} < 1.8; ratios {shown:?}"));
    }
    Ok(format!("optimum L-2 at every L; ratios {shown:?}"))
}

fn fig6_trend() -> Verdict {
    let ms = [2, 4, 8, 12];
    let family = Family::Fig6 {
        rho: Scalar::int(2),
        ms: ms.to_vec(),
        delta: Scalar::ratio(1, 8),
    };
    let mut ratios = Vec::new();
    for (id, inst) in family.instances().map_err(|e| e.to_string())? {
        let (opt_y, opt) = Algorithm::Oracle.run(&inst).map_err(|e| format!("{id}: {e}"))?;
        let (y, active) = untangle(&inst, &opt_y).map_err(|e| format!("{id}: {e}"))?;
        if !is_order_preserving(&inst, &y, &active).unwrap()
            || !verify_coverage(&inst, &y).unwrap().covered
        {
            return Err(format!("{id}: untangled output is not an order-preserving cover"));
        }
        let ratio = cost(&inst, &y).unwrap() / &opt;
        if ratio > Scalar::int(10) {
            return Err(format!("{id}: ratio {ratio} above 3 rho + 4 = 10"));
        }
        ratios.push(ratio);
    }
    let shown: Vec<String> = ratios.iter().map(|r| format!("{:.4}", r.to_f64())).collect();
    if ratios.windows(2).any(|w| w[1] < w[0]) {
        return Err(format!("ratios not nondecreasing: {shown:?}"));
    }
    if ratios.last().unwrap() <= &Scalar::int(3) {
        return Err(format!(
            "order-preserving and <= 10 OPT everywhere, but ratio at m=12 is not above 3: {shown:?}"
        ));
    }
    Ok(format!("ratios {shown:?}"))
}

fn exact_cover_family() -> Vec<ExactCoverInstance> {
    let mut out = Vec::new();
    for m in 1..=2usize {
        let subsets: Vec<BTreeSet<usize>> = (1u32..(1 << m))
            .map(|mask| (1..=m).filter(|&u| mask >> (u - 1) & 1 == 1).collect())
            .collect();
        for n in 1..=3u32 {
            let count = subsets.len().pow(n);
            for code in 0..count {
                let mut rest = code;
                let sets: Vec<BTreeSet<usize>> = (0..n)
                    .map(|_| {
                        let s = subsets[rest % subsets.len()].clone();
                        rest /= subsets.len();
                        s
                    })
                    .collect();
                for k in 1..=n as usize {
                    out.push(ExactCoverInstance::new(m, sets.clone(), k).unwrap());
                }
            }
        }
    }
    out
}

fn reduction_cross_validation() -> Verdict {
    let family = exact_cover_family();
    let mut yes = 0;
    for ec in &family {
        let red = reduce_exact_cover(ec).map_err(|e| e.to_string())?;
        let grid = Scaled::of(&red.instance);
        let query = KMoveQuery {
            budget: grid.budget(&red.budget),
            k: red.k,
        };
        let found = kmove_brute_force(&grid.instance, &query, DEFAULT_STATE_CAP)
            .map_err(|e| format!("{ec:?}: {e}"))?;
        let decided = solve_exact_cover_brute(ec).map_err(|e| e.to_string())?;
        if found.is_some() != decided {
            return Err(format!("{ec:?}: k-move {} vs exact cover {decided}", found.is_some()));
        }
        yes += usize::from(decided);
    }
    let fig7 = ExactCoverInstance::new(
        5,
        vec![
            BTreeSet::from([1, 2]),
            BTreeSet::from([1, 3, 4]),
            BTreeSet::from([2, 5]),
        ],
        2,
    )
    .unwrap();
    let red = reduce_exact_cover(&fig7).map_err(|e| e.to_string())?;
    let width = &red.instance.sensors()[red.sensor_of_set()[1]].r * Scalar::int(2);
    if width != Scalar::int(81) {
        return Err(format!("2 r_2 = {width}, expected 81"));
    }
    Ok(format!(
        "{} exact-cover instances ({yes} yes) agree; 2 r_2 = 81",
        family.len()
    ))
}

fn integrality_and_stabbing(corpus: &[(String, Instance)]) -> Verdict {
    let budget = Scalar::int(common::MAX_BUDGET);
    let mut optima = 0;
    for (id, inst) in corpus {
        let brute = brute_force(inst, &budget, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
        let fpt = fpt_solve(inst, &budget).map_err(|e| e.to_string())?;
        let class = class_order_optimum(inst).map_err(|e| e.to_string())?;
        let dp = if is_feasible(inst) {
            Some(dp_optimal(inst).map_err(|e| e.to_string())?.0)
        } else {
            None
        };
        let outputs = [
            brute.as_ref().map(|o| &o.0),
            fpt.as_ref().map(|o| &o.0),
            class.as_ref().map(|o| &o.0),
            dp.as_ref(),
        ];
        if outputs.iter().flatten().any(|y| !integral(y)) {
            return Err(format!("{id}: non-integral exact-solver output"));
        }
        // oracle optimum: brute force within budget, else the class-order search
        let optimum = brute.or(class);
        if let Some((y, _)) = optimum {
            let active = minimal_active_set(inst, &y).unwrap();
            let depth = max_stabbing_depth(inst, &y, &active);
            if depth > 2 {
                return Err(format!("{id}: a point lies in {depth} active intervals"));
            }
            optima += 1;
        }
    }
    Ok(format!(
        "all outputs integral; {optima} optima have stabbing depth <= 2"
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let corpus = common::random_corpus();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence (fpt vs brute force)", Box::new(|| oracle_equivalence(&corpus))),
        ("order-preserving optimality (dp vs exhaustive)", Box::new(|| order_preserving_optimality(&corpus))),
        ("(1+eps) guarantee", Box::new(|| eps_guarantee(&corpus))),
        ("rounding sandwich", Box::new(|| rounding_sandwich(&corpus))),
        ("big-sensor family trend (rho=2)", Box::new(fig5_trend)),
        ("untangling family trend (rho=2, delta=1/8)", Box::new(fig6_trend)),
        ("exact-cover reduction cross-validation", Box::new(reduction_cross_validation)),
        ("integrality and stabbing depth", Box::new(|| integrality_and_stabbing(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
