use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{BoxSpec, LoadedTu, Placement, Solution};
use crate::packer::{apply, best_insertion};

use super::{improves, pack_with_fallback, SolverParams, TypePointer};

/// Placements with nothing above them, highest top face first (ties keep
/// load order).
pub fn top_layer(tu: &LoadedTu) -> Vec<Placement> {
    let mut tops: Vec<Placement> = tu
        .placements
        .iter()
        .filter(|p| {
            !tu.placements
                .iter()
                .any(|q| q.box_id() != p.box_id() && q.base_overlaps(p) && q.top() > p.top())
        })
        .copied()
        .collect();
    tops.sort_by_key(|p| std::cmp::Reverse(p.top()));
    tops
}

/// Inserts `spec` into `tu` at its cheapest feasible position.
fn reinsert(tu: &mut LoadedTu, spec: BoxSpec, p: &SolverParams) -> bool {
    let slot = std::slice::from_mut(tu);
    match best_insertion(slot, &spec, &p.cost) {
        Some(ins) => {
            apply(slot, spec, &ins);
            true
        }
        None => false,
    }
}

/// Keeps the first improving candidate, otherwise the best one seen.
struct Pick {
    incumbent: f64,
    best: Option<Solution>,
}

impl Pick {
    fn new(sol: &Solution) -> Self {
        Self {
            incumbent: sol.fitness,
            best: None,
        }
    }

    /// Returns true once an improving candidate has been offered.
    fn offer(&mut self, cand: Solution) -> bool {
        let better = self.best.as_ref().is_none_or(|b| cand.fitness < b.fitness);
        if better {
            self.best = Some(cand);
        }
        self.best
            .as_ref()
            .is_some_and(|b| improves(b.fitness, self.incumbent))
    }

    fn finish(self) -> Result<Solution> {
        self.best.ok_or(Error::NoMove)
    }
}

fn argmax_by<F: Fn(&LoadedTu) -> i64>(tus: &[LoadedTu], key: F) -> usize {
    let mut best = 0;
    for (i, tu) in tus.iter().enumerate() {
        if key(tu) > key(&tus[best]) {
            best = i;
        }
    }
    best
}

fn argmin_except<F: Fn(&LoadedTu) -> i64>(tus: &[LoadedTu], skip: usize, key: F) -> usize {
    let mut best = None;
    for (i, tu) in tus.iter().enumerate() {
        if i != skip && best.is_none_or(|b: usize| key(tu) < key(&tus[b])) {
            best = Some(i);
        }
    }
    best.expect("at least two TUs")
}

fn random_except(rng: &mut ChaCha8Rng, n: usize, skip: usize) -> usize {
    let r = rng.gen_range(0..n - 1);
    if r >= skip {
        r + 1
    } else {
        r
    }
}

/// Moves one of the three highest top-layer boxes of `o` onto `d`.
fn relocate(
    sol: &Solution,
    o: usize,
    d: usize,
    rng: &mut ChaCha8Rng,
    p: &SolverParams,
) -> Result<Option<Solution>> {
    let mut pool = top_layer(&sol.tus[o]);
    pool.truncate(3);
    let moved = pool[rng.gen_range(0..pool.len())];
    let mut tus = sol.tus.clone();
    if !reinsert(&mut tus[d], moved.spec, p) {
        return Ok(None);
    }
    tus[o].remove_box(moved.box_id());
    if tus[o].is_empty() {
        tus.remove(o);
    }
    Solution::new(tus, Vec::new(), &p.objective).map(Some)
}

/// N1: relocate a top box between TUs chosen by five strategies in turn
/// (heaviest to lightest, heaviest to random, tallest to lowest, tallest to
/// random, random to random), each tried `micro_repeats` times.
pub fn move_n1(sol: &Solution, p: &SolverParams, rng: &mut ChaCha8Rng) -> Result<Solution> {
    let n = sol.tus.len();
    if n < 2 {
        return Err(Error::NoMove);
    }
    let weight = |t: &LoadedTu| t.total_weight();
    let height = |t: &LoadedTu| t.load_height();
    let mut pick = Pick::new(sol);
    for strategy in 0..5 {
        for _ in 0..p.search.micro_repeats {
            let (o, d) = match strategy {
                0 => {
                    let o = argmax_by(&sol.tus, weight);
                    (o, argmin_except(&sol.tus, o, weight))
                }
                1 => {
                    let o = argmax_by(&sol.tus, weight);
                    (o, random_except(rng, n, o))
                }
                2 => {
                    let o = argmax_by(&sol.tus, height);
                    (o, argmin_except(&sol.tus, o, height))
                }
                3 => {
                    let o = argmax_by(&sol.tus, height);
                    (o, random_except(rng, n, o))
                }
                _ => {
                    let o = rng.gen_range(0..n);
                    (o, random_except(rng, n, o))
                }
            };
            if let Some(cand) = relocate(sol, o, d, rng, p)? {
                if pick.offer(cand) {
                    return pick.finish();
                }
            }
        }
    }
    pick.finish()
}

/// N2: swap a random top-layer box of one random TU with one of another.
pub fn move_n2(sol: &Solution, p: &SolverParams, rng: &mut ChaCha8Rng) -> Result<Solution> {
    let n = sol.tus.len();
    if n < 2 {
        return Err(Error::NoMove);
    }
    let mut pick = Pick::new(sol);
    for _ in 0..p.search.micro_repeats {
        let a = rng.gen_range(0..n);
        let b = random_except(rng, n, a);
        let ta = top_layer(&sol.tus[a]);
        let tb = top_layer(&sol.tus[b]);
        let pa = ta[rng.gen_range(0..ta.len())];
        let pb = tb[rng.gen_range(0..tb.len())];
        let mut tus = sol.tus.clone();
        tus[a].remove_box(pa.box_id());
        tus[b].remove_box(pb.box_id());
        if !reinsert(&mut tus[b], pa.spec, p) || !reinsert(&mut tus[a], pb.spec, p) {
            continue;
        }
        if pick.offer(Solution::new(tus, Vec::new(), &p.objective)?) {
            break;
        }
    }
    pick.finish()
}

/// N3: destroy between 2 and all TUs at random and repack their boxes with
/// the pointer's current type.
pub fn move_n3(
    sol: &Solution,
    p: &SolverParams,
    ptr: &TypePointer,
    rng: &mut ChaCha8Rng,
) -> Result<Solution> {
    let n = sol.tus.len();
    if n < 2 {
        return Err(Error::NoMove);
    }
    let mut pick = Pick::new(sol);
    for _ in 0..p.search.micro_repeats {
        let k = rng.gen_range(2..=n);
        let mut gone = sample(rng, n, k).into_vec();
        gone.sort_unstable();
        let boxes: Vec<BoxSpec> = gone
            .iter()
            .flat_map(|&i| sol.tus[i].placements.iter().map(|pl| pl.spec))
            .collect();
        let mut tus: Vec<LoadedTu> = sol
            .tus
            .iter()
            .enumerate()
            .filter(|(i, _)| gone.binary_search(i).is_err())
            .map(|(_, t)| t.clone())
            .collect();
        tus.extend(pack_with_fallback(ptr, &boxes, p)?);
        if pick.offer(Solution::new(tus, Vec::new(), &p.objective)?) {
            break;
        }
    }
    pick.finish()
}
