//! Iterated local search over a packed solution.
//!
//! The search starts from a constructive packing on the smallest TU type and
//! alternates two local searches until neither improves:
//!
//! * LS1 relocates single boxes (N1), swaps boxes between TUs (N2) and
//!   repacks random groups of TUs (N3);
//! * LS2 destroys poorly used TUs and repacks their boxes with each TU type
//!   in turn, following a circular pointer over the catalog.
//!
//! Only strictly improving candidates are accepted, and every random draw
//! comes from one seeded stream, so a run is reproducible from its seed.

mod moves;
mod pointer;

pub use moves::{move_n1, move_n2, move_n3, top_layer};
pub use pointer::TypePointer;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{fill_rate, BoxSpec, Cm, Instance, LoadedTu, ObjectiveParams, Solution};
use crate::packer::{fits_type, pack_3dbp, CostParams, SortParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchParams {
    /// LS2 destroys TUs filled below this percentage.
    pub omega: f64,
    /// LS2 destroys TUs whose lateral slack exceeds this length.
    pub gamma: Cm,
    /// Attempts per strategy in each LS1 move.
    pub micro_repeats: u32,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            omega: 95.0,
            gamma: 100,
            micro_repeats: 3,
            seed: 0,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=100.0).contains(&self.omega) {
            return Err(Error::InvalidParameter("omega must lie in [0, 100]".into()));
        }
        if self.gamma < 0 {
            return Err(Error::InvalidParameter("gamma must be non-negative".into()));
        }
        if self.micro_repeats == 0 {
            return Err(Error::InvalidParameter("micro_repeats must be >= 1".into()));
        }
        Ok(())
    }
}

/// Every tunable of a solver run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    pub objective: ObjectiveParams,
    pub cost: CostParams,
    pub sort: SortParams,
    pub search: SearchParams,
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        self.objective.validate()?;
        self.cost.validate()?;
        self.sort.validate()?;
        self.search.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    Init,
    N1,
    N2,
    N3,
    Ls2,
}

/// The incumbent after the initial packing and after each accepted move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub phase: Phase,
    pub fitness: f64,
    pub tu_count: usize,
    pub type_counts: Vec<(String, usize)>,
}

impl TraceEvent {
    fn of(phase: Phase, sol: &Solution) -> Self {
        Self {
            phase,
            fitness: sol.fitness,
            tu_count: sol.tus.len(),
            type_counts: sol.type_counts(),
        }
    }
}

/// Acceptance counters of one run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub initial_fitness: f64,
    pub initial_tus: usize,
    pub n1_accepted: u32,
    pub n2_accepted: u32,
    pub n3_accepted: u32,
    pub ls2_accepted: u32,
    /// Total fitness decrease from LS1 moves.
    pub ls1_gain: f64,
    /// Total fitness decrease from LS2 rebuilds.
    pub ls2_gain: f64,
}

impl SearchStats {
    pub fn ls1_accepted(&self) -> u32 {
        self.n1_accepted + self.n2_accepted + self.n3_accepted
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub solution: Solution,
    pub trace: Vec<TraceEvent>,
    pub stats: SearchStats,
}

/// Strict improvement with a relative guard against rounding noise.
pub(crate) fn improves(candidate: f64, incumbent: f64) -> bool {
    candidate < incumbent - 1e-9 * incumbent.abs().max(1.0)
}

/// Packs `boxes` with the pointer's current type; boxes that do not fit it
/// go to the next type in pointer order that takes them.
pub fn pack_with_fallback(
    ptr: &TypePointer,
    boxes: &[BoxSpec],
    p: &SolverParams,
) -> Result<Vec<LoadedTu>> {
    let mut tus = Vec::new();
    let mut left: Vec<BoxSpec> = boxes.to_vec();
    for k in 0..ptr.len() {
        if left.is_empty() {
            break;
        }
        let tut = ptr.peek(k);
        let (fit, rest): (Vec<BoxSpec>, Vec<BoxSpec>) =
            left.iter().partition(|b| fits_type(b, tut));
        if !fit.is_empty() {
            let out = pack_3dbp(tut, &fit, &p.cost, &p.sort);
            debug_assert!(out.unplaced.is_empty());
            tus.extend(out.tus);
        }
        left = rest;
    }
    match left.first() {
        Some(b) => Err(Error::BoxUnpackable(b.id)),
        None => Ok(tus),
    }
}

/// Packs every box of `instance` on the smallest-volume type.
pub fn initialize(instance: &Instance, ptr: &TypePointer, p: &SolverParams) -> Result<Solution> {
    let tus = pack_with_fallback(ptr, &instance.boxes, p)?;
    Solution::new(tus, Vec::new(), &p.objective)
}

fn record(
    sol: &mut Solution,
    cand: Solution,
    phase: Phase,
    trace: &mut Vec<TraceEvent>,
    stats: &mut SearchStats,
) {
    let gain = sol.fitness - cand.fitness;
    match phase {
        Phase::N1 => stats.n1_accepted += 1,
        Phase::N2 => stats.n2_accepted += 1,
        Phase::N3 => stats.n3_accepted += 1,
        Phase::Ls2 => stats.ls2_accepted += 1,
        Phase::Init => {}
    }
    match phase {
        Phase::Ls2 => stats.ls2_gain += gain,
        _ => stats.ls1_gain += gain,
    }
    *sol = cand;
    trace.push(TraceEvent::of(phase, sol));
}

/// First-order local search: N1, N2, N3 in turn, restarting from N1 after
/// every accepted move, until a full pass brings no improvement.
pub fn ls1(
    sol: &mut Solution,
    p: &SolverParams,
    ptr: &TypePointer,
    rng: &mut ChaCha8Rng,
    trace: &mut Vec<TraceEvent>,
    stats: &mut SearchStats,
) -> Result<()> {
    'pass: loop {
        for phase in [Phase::N1, Phase::N2, Phase::N3] {
            let cand = match phase {
                Phase::N1 => move_n1(sol, p, rng),
                Phase::N2 => move_n2(sol, p, rng),
                _ => move_n3(sol, p, ptr, rng),
            };
            match cand {
                Ok(c) if improves(c.fitness, sol.fitness) => {
                    record(sol, c, phase, trace, stats);
                    continue 'pass;
                }
                Ok(_) | Err(Error::NoMove) => {}
                Err(e) => return Err(e),
            }
        }
        return Ok(());
    }
}

/// Whether a TU is a destruction target for LS2.
pub fn ls2_target(tu: &LoadedTu, sp: &SearchParams) -> bool {
    fill_rate(tu) < sp.omega || tu.lateral_slack() > sp.gamma
}

/// Second-order local search. Destroys every TU filled below Ω or with
/// lateral slack above γ, then rebuilds their boxes with successive types
/// from the pointer. The first rebuild that improves fitness and changes
/// the TU-type multiset is kept, leaving the pointer on its type; after a
/// full cycle without one the pointer is back where it started.
pub fn ls2(sol: &Solution, p: &SolverParams, ptr: &mut TypePointer) -> Result<Option<Solution>> {
    let (gone, kept): (Vec<&LoadedTu>, Vec<&LoadedTu>) =
        sol.tus.iter().partition(|tu| ls2_target(tu, &p.search));
    if gone.is_empty() {
        return Ok(None);
    }
    let boxes: Vec<BoxSpec> = gone
        .iter()
        .flat_map(|tu| tu.placements.iter().map(|pl| pl.spec))
        .collect();
    let kept: Vec<LoadedTu> = kept.into_iter().cloned().collect();
    let before = sol.type_counts();
    for _ in 0..ptr.len() {
        ptr.advance();
        let mut tus = kept.clone();
        tus.extend(pack_with_fallback(ptr, &boxes, p)?);
        let cand = Solution::new(tus, Vec::new(), &p.objective)?;
        if improves(cand.fitness, sol.fitness) && cand.type_counts() != before {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Runs the full search on `instance`.
pub fn solve(instance: &Instance, p: &SolverParams) -> Result<SolveOutcome> {
    instance.validate()?;
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.search.seed);
    let mut ptr = TypePointer::new(&instance.catalog)?;
    let mut sol = initialize(instance, &ptr, p)?;
    let mut trace = vec![TraceEvent::of(Phase::Init, &sol)];
    let mut stats = SearchStats {
        initial_fitness: sol.fitness,
        initial_tus: sol.tus.len(),
        ..SearchStats::default()
    };
    loop {
        ls1(&mut sol, p, &ptr, &mut rng, &mut trace, &mut stats)?;
        match ls2(&sol, p, &mut ptr)? {
            Some(cand) => record(&mut sol, cand, Phase::Ls2, &mut trace, &mut stats),
            None => break,
        }
    }
    Ok(SolveOutcome {
        solution: sol,
        trace,
        stats,
    })
}
