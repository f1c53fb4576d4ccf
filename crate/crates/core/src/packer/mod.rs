//! Extreme-point constructive packing of boxes into TUs of a single type.
//!
//! Boxes are ordered by [`sort_boxes`] and inserted one at a time at the
//! cheapest feasible (TU, extreme point, orientation) triple according to
//! [`placement_cost`]. When no open TU can take a box, a new TU is opened and
//! the box goes to its origin.

mod extreme_point;
mod sort;

pub use extreme_point::{generate_eps, update_eps, ExtremePoint};
pub use sort::{sort_boxes, SortParams, SortedBox};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    boxes_overlap, enumerate_orientations, BoxId, BoxSpec, LoadedTu, Orientation, Placement, TuType,
};
use crate::geometry::{violates_stacking, within_bounds};

/// Weights of the placement pricing function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostParams {
    /// Weight of the EP level (`N`).
    pub big_n: f64,
    /// Weight of the box top height (`M`).
    pub big_m: f64,
    /// Fraction of `N` applied to the residual slack.
    pub theta: f64,
    /// Weight of the modulo partition term.
    pub lambda: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            big_n: 10_000.0,
            big_m: 1_000.0,
            theta: 0.01,
            lambda: 1.0,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.big_n > self.big_m && self.big_m > 1.0) {
            return Err(Error::InvalidParameter(
                "cost constants need N > M > 1".into(),
            ));
        }
        if self.theta < 0.0 || self.lambda < 0.0 {
            return Err(Error::InvalidParameter(
                "cost weights must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// A box in a chosen orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedBox {
    pub spec: BoxSpec,
    pub orientation: Orientation,
}

impl OrientedBox {
    fn at(&self, ep: &ExtremePoint) -> Placement {
        Placement::new(self.spec, self.orientation, ep.x, ep.y, ep.z)
    }
}

/// Price of putting `ob` at `ep` in a TU already holding `nbox` boxes.
///
/// ```text
/// N·z + x + y + M·(z + h) − N·θ·[(rx − w) + (ry − l)] + λ·[(rx mod w) + (ry mod l)] − NBOX
/// ```
pub fn placement_cost(ep: &ExtremePoint, ob: &OrientedBox, nbox: usize, cp: &CostParams) -> f64 {
    let (w, l, h) = ob.orientation.extents();
    let slack = ((ep.rx - w) + (ep.ry - l)) as f64;
    let modulo = (ep.rx.rem_euclid(w) + ep.ry.rem_euclid(l)) as f64;
    cp.big_n * ep.z as f64 + (ep.x + ep.y) as f64 + cp.big_m * (ep.z + h) as f64
        - cp.big_n * cp.theta * slack
        + cp.lambda * modulo
        - nbox as f64
}

fn fits_residuals(ep: &ExtremePoint, o: &Orientation) -> bool {
    o.dx <= ep.rx && o.dy <= ep.ry && o.dz <= ep.rz
}

/// Geometric part of the fit test: bounds, overlap and the empty column over
/// non-stackable boxes (in both directions).
fn clear_of_load(tu: &LoadedTu, candidate: &Placement) -> bool {
    within_bounds(candidate, &tu.tu_type)
        && tu.placements.iter().all(|p| {
            !boxes_overlap(p, candidate)
                && !violates_stacking(p, candidate)
                && !violates_stacking(candidate, p)
        })
}

/// Whether `ob` can go at `ep` in `tu`: residuals, weight capacity, bounds,
/// overlap with every loaded box and stackability.
pub fn can_fit(tu: &LoadedTu, ep: &ExtremePoint, ob: &OrientedBox) -> bool {
    fits_residuals(ep, &ob.orientation)
        && tu.total_weight() + ob.spec.weight <= tu.tu_type.capacity
        && clear_of_load(tu, &ob.at(ep))
}

/// The cheapest feasible slot for a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insertion {
    pub tu_index: usize,
    pub ep_index: usize,
    pub orientation: Orientation,
    pub cost: f64,
}

/// Minimum-cost feasible insertion of `spec` over all `tus`. Ties go to the
/// earliest TU, then the earliest extreme point, then the earliest orientation.
pub fn best_insertion(tus: &[LoadedTu], spec: &BoxSpec, cp: &CostParams) -> Option<Insertion> {
    let orientations = enumerate_orientations(spec);
    let mut best: Option<Insertion> = None;
    for (tu_index, tu) in tus.iter().enumerate() {
        if tu.total_weight() + spec.weight > tu.tu_type.capacity {
            continue;
        }
        for (ep_index, ep) in tu.eps.iter().enumerate() {
            for o in &orientations {
                if !fits_residuals(ep, o) {
                    continue;
                }
                let ob = OrientedBox {
                    spec: *spec,
                    orientation: *o,
                };
                let cost = placement_cost(ep, &ob, tu.nbox(), cp);
                if best.is_some_and(|b| cost >= b.cost) {
                    continue;
                }
                // the overlap scan is the expensive part; only run it for
                // candidates that would become the new best
                if clear_of_load(tu, &ob.at(ep)) {
                    best = Some(Insertion {
                        tu_index,
                        ep_index,
                        orientation: *o,
                        cost,
                    });
                }
            }
        }
    }
    best
}

/// Places `spec` at extreme point `ep_index` of `tu` and refreshes the
/// extreme points. The caller is responsible for feasibility.
pub fn insert(
    tu: &mut LoadedTu,
    ep_index: usize,
    spec: BoxSpec,
    orientation: Orientation,
) -> Placement {
    let ep = tu.eps.remove(ep_index);
    let placement = Placement::new(spec, orientation, ep.x, ep.y, ep.z);
    tu.push_placement(placement);
    update_eps(tu, &placement);
    placement
}

/// Applies an insertion found by [`best_insertion`] on the same TU list.
pub fn apply(tus: &mut [LoadedTu], spec: BoxSpec, ins: &Insertion) -> Placement {
    insert(&mut tus[ins.tu_index], ins.ep_index, spec, ins.orientation)
}

/// Result of a constructive run: the filled TUs and the boxes that fit no
/// orientation of the type.
#[derive(Debug, Clone, PartialEq)]
pub struct PackOutcome {
    pub tus: Vec<LoadedTu>,
    pub unplaced: Vec<BoxId>,
}

impl PackOutcome {
    pub fn into_result(self) -> Result<Vec<LoadedTu>> {
        match self.unplaced.first() {
            Some(id) => Err(Error::BoxUnpackable(*id)),
            None => Ok(self.tus),
        }
    }
}

/// Whether `spec` fits an empty TU of type `tut` in some orientation.
pub fn fits_type(spec: &BoxSpec, tut: &TuType) -> bool {
    spec.weight <= tut.capacity
        && enumerate_orientations(spec)
            .iter()
            .any(|o| o.dx <= tut.x && o.dy <= tut.y && o.dz <= tut.z)
}

/// Packs `boxes` into as many TUs of type `tut` as needed.
pub fn pack_3dbp(tut: &TuType, boxes: &[BoxSpec], cp: &CostParams, sp: &SortParams) -> PackOutcome {
    let mut tus: Vec<LoadedTu> = Vec::new();
    let mut unplaced = Vec::new();
    for sorted in sort_boxes(boxes, tut, sp) {
        let spec = sorted.spec;
        if let Some(ins) = best_insertion(&tus, &spec, cp) {
            apply(&mut tus, spec, &ins);
            continue;
        }
        let mut fresh = vec![LoadedTu::new(tut.clone())];
        match best_insertion(&fresh, &spec, cp) {
            Some(ins) => {
                apply(&mut fresh, spec, &ins);
                tus.append(&mut fresh);
            }
            None => unplaced.push(spec.id),
        }
    }
    PackOutcome { tus, unplaced }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fill_rate, validate_tu, Cm, OrientationCode};

    fn pallet(x: Cm, y: Cm, z: Cm) -> TuType {
        TuType::from_dims(x, y, z, 10_000).unwrap()
    }

    #[test]
    fn cost_at_origin_reduces() {
        let cp = CostParams::default();
        let spec = BoxSpec::new(1, 40, 30, 40, 1);
        let ob = OrientedBox {
            spec,
            orientation: Orientation::of(&spec, OrientationCode(0)).unwrap(),
        };
        let ep = ExtremePoint::new(0, 0, 0, 120, 80, 160);
        let expected = cp.big_m * 40.0 - cp.big_n * cp.theta * ((120 - 40) + (80 - 30)) as f64
            + cp.lambda * (80 % 30) as f64;
        assert_eq!(placement_cost(&ep, &ob, 0, &cp), expected);
    }

    #[test]
    fn modulo_term_vanishes_for_dividing_orientation() {
        let cp = CostParams {
            big_n: 10.0,
            big_m: 2.0,
            theta: 0.0,
            lambda: 1.0,
        };
        let spec = BoxSpec::new(1, 40, 30, 40, 1);
        let ep = ExtremePoint::new(0, 0, 0, 120, 80, 160);
        let cost = |code| {
            let ob = OrientedBox {
                spec,
                orientation: Orientation::of(&spec, OrientationCode(code)).unwrap(),
            };
            placement_cost(&ep, &ob, 0, &cp) - 2.0 * 40.0
        };
        // 40 along X: 120 % 40 + 80 % 30 = 20; 30 along X: 120 % 30 + 80 % 40 = 0
        assert_eq!(cost(0), 20.0);
        assert_eq!(cost(1), 0.0);
    }

    #[test]
    fn fuller_tu_wins_ties() {
        let cp = CostParams::default();
        let spec = BoxSpec::new(1, 10, 10, 10, 1);
        let ob = OrientedBox {
            spec,
            orientation: Orientation::of(&spec, OrientationCode(0)).unwrap(),
        };
        let ep = ExtremePoint::new(0, 0, 0, 50, 50, 50);
        assert!(placement_cost(&ep, &ob, 5, &cp) < placement_cost(&ep, &ob, 4, &cp));
    }

    #[test]
    fn single_box_goes_to_origin() {
        let out = pack_3dbp(
            &pallet(120, 80, 160),
            &[BoxSpec::new(7, 50, 30, 20, 3)],
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.tus.len(), 1);
        let p = out.tus[0].placements[0];
        assert_eq!((p.x, p.y, p.z), (0, 0, 0));
    }

    #[test]
    fn perfect_partition_fills_one_tu() {
        let boxes: Vec<_> = (0..32).map(|i| BoxSpec::new(i, 40, 30, 40, 2)).collect();
        let out = pack_3dbp(
            &pallet(120, 80, 160),
            &boxes,
            &CostParams::default(),
            &SortParams::default(),
        );
        assert!(out.unplaced.is_empty());
        assert_eq!(out.tus.len(), 1);
        assert_eq!(fill_rate(&out.tus[0]), 100.0);
        assert!(validate_tu(&out.tus[0]).is_empty());
    }

    #[test]
    fn twelve_cartons_need_two_short_pallets() {
        let boxes: Vec<_> = (0..12).map(|i| BoxSpec::new(i, 60, 40, 60, 2)).collect();
        let out = pack_3dbp(
            &pallet(120, 80, 160),
            &boxes,
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.tus.len(), 2);
        assert!(out.tus.iter().all(|t| validate_tu(t).is_empty()));
    }

    #[test]
    fn oversized_box_is_reported() {
        let out = pack_3dbp(
            &pallet(120, 80, 100),
            &[
                BoxSpec::new(1, 10, 10, 10, 1),
                BoxSpec::new(2, 130, 10, 10, 1),
            ],
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.unplaced, vec![BoxId(2)]);
        assert_eq!(out.tus.len(), 1);
        assert_eq!(
            out.clone().into_result(),
            Err(Error::BoxUnpackable(BoxId(2)))
        );

        let heavy = TuType::from_dims(120, 80, 100, 5).unwrap();
        let out = pack_3dbp(
            &heavy,
            &[BoxSpec::new(3, 10, 10, 10, 6)],
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.unplaced, vec![BoxId(3)]);
        assert!(out.tus.is_empty());
    }

    #[test]
    fn weight_capacity_opens_new_tu() {
        let light = TuType::from_dims(120, 80, 100, 10).unwrap();
        let boxes: Vec<_> = (0..3).map(|i| BoxSpec::new(i, 10, 10, 10, 4)).collect();
        let out = pack_3dbp(
            &light,
            &boxes,
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.tus.len(), 2);
        assert!(out.tus.iter().all(|t| t.total_weight() <= 10));
    }

    #[test]
    fn non_stackable_column_stays_empty() {
        let boxes = vec![
            BoxSpec::new(1, 120, 80, 20, 5).with_stackable(false),
            BoxSpec::new(2, 10, 10, 10, 1),
        ];
        let out = pack_3dbp(
            &pallet(120, 80, 100),
            &boxes,
            &CostParams::default(),
            &SortParams::default(),
        );
        assert_eq!(out.tus.len(), 2);
        assert!(out.tus.iter().all(|t| validate_tu(t).is_empty()));
    }
}
