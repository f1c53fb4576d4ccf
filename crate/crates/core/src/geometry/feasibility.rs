use std::fmt;

use super::{BoxId, Kg, LoadedTu, Placement, TuType};

/// Strict-inequality overlap test on all three axes: boxes that merely share
/// a face do not overlap.
pub fn boxes_overlap(a: &Placement, b: &Placement) -> bool {
    a.x.max(b.x) < a.x_end().min(b.x_end())
        && a.y.max(b.y) < a.y_end().min(b.y_end())
        && a.z.max(b.z) < a.top().min(b.top())
}

pub fn within_bounds(p: &Placement, tut: &TuType) -> bool {
    0 <= p.x && p.x_end() <= tut.x && 0 <= p.y && p.y_end() <= tut.y && 0 <= p.z && p.top() <= tut.z
}

/// A broken constraint in a loaded TU.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The orientation is not allowed by the box's flags or its extents do
    /// not match its raw dimensions.
    Orientation {
        box_id: BoxId,
    },
    Weight {
        total: Kg,
        capacity: Kg,
    },
    Bounds {
        box_id: BoxId,
    },
    Overlap {
        a: BoxId,
        b: BoxId,
    },
    /// `above` occupies the column over the non-stackable box `below`.
    Stackability {
        below: BoxId,
        above: BoxId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Orientation { box_id } => write!(f, "orientation box={box_id}"),
            Violation::Weight { total, capacity } => {
                write!(f, "weight total={total} capacity={capacity}")
            }
            Violation::Bounds { box_id } => write!(f, "bounds box={box_id}"),
            Violation::Overlap { a, b } => write!(f, "overlap a={a} b={b}"),
            Violation::Stackability { below, above } => {
                write!(f, "stackability below={below} above={above}")
            }
        }
    }
}

/// True when `above` intrudes on the column over non-stackable `below`.
pub(crate) fn violates_stacking(below: &Placement, above: &Placement) -> bool {
    !below.spec.stackable && below.base_overlaps(above) && above.top() > below.top()
}

/// Checks orientation, weight, bounds, overlap and stackability.
pub fn validate_tu(tu: &LoadedTu) -> Vec<Violation> {
    let mut out = Vec::new();
    let tut = &tu.tu_type;
    for p in &tu.placements {
        if !p.orientation.is_valid_for(&p.spec) {
            out.push(Violation::Orientation { box_id: p.box_id() });
        }
    }
    let total: Kg = tu.placements.iter().map(|p| p.spec.weight).sum();
    if total > tut.capacity {
        out.push(Violation::Weight {
            total,
            capacity: tut.capacity,
        });
    }
    for p in &tu.placements {
        if !within_bounds(p, tut) {
            out.push(Violation::Bounds { box_id: p.box_id() });
        }
    }
    for (i, a) in tu.placements.iter().enumerate() {
        for b in &tu.placements[i + 1..] {
            if boxes_overlap(a, b) {
                out.push(Violation::Overlap {
                    a: a.box_id(),
                    b: b.box_id(),
                });
            }
        }
    }
    for below in tu.placements.iter().filter(|p| !p.spec.stackable) {
        for above in &tu.placements {
            if above.spec.id != below.spec.id && violates_stacking(below, above) {
                out.push(Violation::Stackability {
                    below: below.box_id(),
                    above: above.box_id(),
                });
            }
        }
    }
    out
}
