#![allow(dead_code)]

use barrier_core::generators::gen_random;
use barrier_core::model::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 200;
pub const MAX_BUDGET: i64 = 8;

/// Seeded corpus: n in 1..=6, L in 1..=12, x in [-10, 15], r in {1, 2, 3}.
/// Half the instances draw x from a window of width 12 inside that range so
/// that a fair share of them can be covered within budget 8.
pub fn random_corpus() -> Vec<(String, Instance)> {
    let mut meta = ChaCha8Rng::seed_from_u64(0xB0A7);
    (0..CORPUS_SIZE)
        .map(|k| {
            let n = meta.gen_range(1..=6);
            let length = meta.gen_range(1..=12);
            let x_range = if k % 2 == 0 {
                (-10, 15)
            } else {
                let lo = meta.gen_range(-10..=3);
                (lo, lo + 12)
            };
            let seed = meta.gen::<u64>();
            let inst = gen_random(n, length, 1, 3, x_range, seed).unwrap();
            (format!("rand{k:03}/n={n};L={length};seed={seed}"), inst)
        })
        .collect()
}

/// Integer data of an instance known to be integral.
pub fn int_data(inst: &Instance) -> (i64, Vec<i64>, Vec<i64>) {
    let l = inst.length().to_i64().unwrap();
    let x = inst.sensors().iter().map(|s| s.x.to_i64().unwrap()).collect();
    let r = inst.sensors().iter().map(|s| s.r.to_i64().unwrap()).collect();
    (l, x, r)
}

/// Cheapest order-preserving solution over integer centers, by exhaustive
/// search: every subset S of sensors, every strictly increasing placement
/// of S (in index order) with centers in [-r, L + r] whose intervals cover
/// [0, L] on their own. Sensors outside S stay put. `None` if infeasible.
pub fn order_preserving_brute(inst: &Instance) -> Option<i64> {
    let (l, x, r) = int_data(inst);
    let n = x.len();
    if l == 0 {
        return Some(0);
    }
    let mut best: Option<i64> = None;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut chosen = Vec::with_capacity(members.len());
        place(&members, 0, i64::MIN, 0, &x, &r, l, &mut chosen, &mut best);
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn place(
    members: &[usize],
    k: usize,
    prev: i64,
    spent: i64,
    x: &[i64],
    r: &[i64],
    l: i64,
    chosen: &mut Vec<(i64, i64)>,
    best: &mut Option<i64>,
) {
    if best.is_some_and(|b| spent >= b) {
        return;
    }
    if k == members.len() {
        if covers(chosen, l) {
            *best = Some(spent);
        }
        return;
    }
    let i = members[k];
    for c in (-r[i]).max(prev + 1)..=l + r[i] {
        chosen.push((c - r[i], c + r[i]));
        place(members, k + 1, c, spent + (c - x[i]).abs(), x, r, l, chosen, best);
        chosen.pop();
    }
}

fn covers(spans: &[(i64, i64)], l: i64) -> bool {
    let mut spans = spans.to_vec();
    spans.sort_unstable();
    let mut reach = 0;
    for (lo, hi) in spans {
        if lo > reach {
            return false;
        }
        reach = reach.max(hi);
    }
    reach >= l
}
