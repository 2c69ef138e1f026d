//! Plain-text instance and solution files.
//!
//! ```text
//! # optional comments
//! L 4
//! N 2
//! 0 1
//! 5 1
//! ```
//!
//! A solution file is `COST <c>` followed by one center per line, aligned
//! with the sorted sensor order. Numbers are integers or `p/q` fractions.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{cost, Instance, Sensor, Solution};
use crate::scalar::Scalar;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn scalar(line: usize, token: &str) -> Result<Scalar> {
    token
        .parse()
        .map_err(|e| parse_err(line, format!("{e}")))
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, &'a str)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(0, format!("missing `{key}` line")))?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok((no, v)),
        _ => Err(parse_err(no, format!("expected `{key} <value>`, got `{line}`"))),
    }
}

/// Parses an instance file. Sensors are sorted on load; `perm[k]` is the
/// file position of sorted sensor `k`.
pub fn parse_instance(text: &str) -> Result<(Instance, Vec<usize>)> {
    let mut lines = content_lines(text);
    let (no, l) = keyword(&mut lines, "L")?;
    let length = scalar(no, l)?;
    let (no, n) = keyword(&mut lines, "N")?;
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(no, format!("bad sensor count `{n}`")))?;
    let mut sensors = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {n} sensors, found {}", sensors.len())))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [x, r] = parts[..] else {
            return Err(parse_err(no, format!("expected `<x> <r>`, got `{line}`")));
        };
        sensors.push(Sensor::new(scalar(no, x)?, scalar(no, r)?));
    }
    if let Some((no, line)) = lines.next() {
        return Err(parse_err(no, format!("trailing content `{line}`")));
    }
    Instance::with_permutation(length, sensors).map_err(|e| match e {
        Error::Precondition(m) => parse_err(0, m),
        other => other,
    })
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "L {}", instance.length()).unwrap();
    writeln!(out, "N {}", instance.len()).unwrap();
    for s in instance.sensors() {
        writeln!(out, "{} {}", s.x, s.r).unwrap();
    }
    out
}

/// Parses a solution file for `instance`; the stated cost must match the
/// recomputed one.
pub fn parse_solution(text: &str, instance: &Instance) -> Result<Solution> {
    let mut lines = content_lines(text);
    let (no, c) = keyword(&mut lines, "COST")?;
    let stated = scalar(no, c)?;
    let mut y = Vec::with_capacity(instance.len());
    for (no, line) in lines {
        if y.len() == instance.len() {
            return Err(parse_err(no, format!("more than {} positions", instance.len())));
        }
        y.push(scalar(no, line)?);
    }
    if y.len() != instance.len() {
        return Err(Error::LengthMismatch {
            expected: instance.len(),
            found: y.len(),
        });
    }
    let solution = Solution::new(y);
    let actual = cost(instance, &solution)?;
    if actual != stated {
        return Err(parse_err(
            no,
            format!("stated cost {stated} but the positions cost {actual}"),
        ));
    }
    Ok(solution)
}

pub fn write_solution(instance: &Instance, solution: &Solution) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "COST {}", cost(instance, solution)?).unwrap();
    for y in &solution.y {
        writeln!(out, "{y}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const I1: &str = "L 4\nN 2\n0 1\n5 1\n";

    #[test]
    fn canonical_round_trip() {
        let (inst, perm) = parse_instance(I1).unwrap();
        assert_eq!(perm, vec![0, 1]);
        assert_eq!(write_instance(&inst), I1);
        let frac = "L 9/2\nN 2\n-1/3 3/2\n7 1\n";
        assert_eq!(write_instance(&parse_instance(frac).unwrap().0), frac);
    }

    #[test]
    fn loader_sorts_and_skips_comments() {
        let text = "# two sensors\nL 4\n\nN 3\n5 1\n# middle\n0 2\n0 1\n";
        let (inst, perm) = parse_instance(text).unwrap();
        assert_eq!(perm, vec![2, 1, 0]);
        assert_eq!(inst.sensors()[0], Sensor::new(0, 1));
        assert_eq!(write_instance(&inst), "L 4\nN 3\n0 1\n0 2\n5 1\n");
    }

    #[test]
    fn malformed_instances() {
        for bad in [
            "",
            "N 2\n",
            "L 4\nN 2\n0 1\n",
            "L 4\nN 1\n0 1\n3 1\n",
            "L 4\nN 1\n0\n",
            "L 0.5\nN 0\n",
            "L 4\nN x\n",
            "L 4\nN 1\n0 0\n",
            "L -1\nN 0\n",
        ] {
            assert!(parse_instance(bad).is_err(), "{bad:?}");
        }
        let empty = parse_instance("L 0\nN 0\n").unwrap().0;
        assert!(empty.is_empty());
    }

    #[test]
    fn solution_round_trip_and_cost_check() {
        let (inst, _) = parse_instance(I1).unwrap();
        let sol = Solution::new(vec![Scalar::int(1), Scalar::int(3)]);
        let text = write_solution(&inst, &sol).unwrap();
        assert_eq!(text, "COST 3\n1\n3\n");
        assert_eq!(parse_solution(&text, &inst).unwrap(), sol);
        assert!(parse_solution("COST 2\n1\n3\n", &inst).is_err());
        assert!(matches!(
            parse_solution("COST 1\n1\n", &inst),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(parse_solution("COST 3\n1\n3\n4\n", &inst).is_err());
        let frac = parse_solution("COST 5/2\n1/2\n3\n", &inst).unwrap();
        assert_eq!(frac.y[0], Scalar::ratio(1, 2));
    }
}
