//! Domain types for boxes, transport units (TUs) and their placements,
//! together with the feasibility predicates and load-balance measures every
//! other module builds on.
//!
//! All lengths are integer centimetres and all masses integer kilograms, so
//! every geometric predicate is exact.

mod feasibility;
mod freight;
mod objective;
mod orientation;

pub(crate) use feasibility::violates_stacking;
pub use feasibility::{boxes_overlap, validate_tu, within_bounds, Violation};
pub use freight::{shipment_cost, taxable_weight, volumetric_weight, CBM_TO_KG};
pub use objective::{center_of_gravity, fill_rate, fitness, CgReport, ObjectiveParams, Solution};
pub use orientation::{enumerate_orientations, Orientation, OrientationCode};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::packer::ExtremePoint;

/// Length in centimetres.
pub type Cm = i64;
/// Mass in kilograms.
pub type Kg = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxId(pub u32);

impl fmt::Display for BoxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A package to be consolidated, described by its raw dimensions.
///
/// Swapping width and length on the base is always allowed; `txz` and `tyz`
/// additionally allow the raw width (resp. length) to stand vertically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxSpec {
    pub id: BoxId,
    pub width: Cm,
    pub length: Cm,
    pub height: Cm,
    pub weight: Kg,
    pub txz: bool,
    pub tyz: bool,
    pub stackable: bool,
}

impl BoxSpec {
    /// An upright-only, stackable box.
    pub fn new(id: u32, width: Cm, length: Cm, height: Cm, weight: Kg) -> Self {
        Self {
            id: BoxId(id),
            width,
            length,
            height,
            weight,
            txz: false,
            tyz: false,
            stackable: true,
        }
    }

    pub fn with_rotation(mut self, txz: bool, tyz: bool) -> Self {
        self.txz = txz;
        self.tyz = tyz;
        self
    }

    pub fn with_stackable(mut self, stackable: bool) -> Self {
        self.stackable = stackable;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width <= 0 || self.length <= 0 || self.height <= 0 {
            return Err(Error::InvalidBox {
                id: self.id,
                reason: "dimensions must be strictly positive",
            });
        }
        if self.weight < 0 {
            return Err(Error::InvalidBox {
                id: self.id,
                reason: "weight must be non-negative",
            });
        }
        Ok(())
    }

    pub fn volume_cm3(&self) -> i64 {
        self.width * self.length * self.height
    }
}

/// A transport-unit type: base `x` by `y`, maximum load height `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TuType {
    pub id: String,
    pub x: Cm,
    pub y: Cm,
    pub z: Cm,
    /// Weight capacity.
    pub capacity: Kg,
}

impl TuType {
    pub fn new(id: impl Into<String>, x: Cm, y: Cm, z: Cm, capacity: Kg) -> Result<Self> {
        let tut = Self {
            id: id.into(),
            x,
            y,
            z,
            capacity,
        };
        tut.validate()?;
        Ok(tut)
    }

    /// A type whose id is its `XxYxZ` dimension string.
    pub fn from_dims(x: Cm, y: Cm, z: Cm, capacity: Kg) -> Result<Self> {
        Self::new(format!("{x}x{y}x{z}"), x, y, z, capacity)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x <= 0 || self.y <= 0 || self.z <= 0 {
            return Err(Error::InvalidTuType {
                id: self.id.clone(),
                reason: "dimensions must be strictly positive",
            });
        }
        if self.capacity <= 0 {
            return Err(Error::InvalidTuType {
                id: self.id.clone(),
                reason: "weight capacity must be strictly positive",
            });
        }
        Ok(())
    }

    pub fn volume_cm3(&self) -> i64 {
        self.x * self.y * self.z
    }

    /// Volume in litres (dm³).
    pub fn volume_liters(&self) -> f64 {
        self.volume_cm3() as f64 / 1000.0
    }

    pub fn base_area(&self) -> i64 {
        self.x * self.y
    }
}

/// A box resting in a TU at the west-south-down corner `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub spec: BoxSpec,
    pub orientation: Orientation,
    pub x: Cm,
    pub y: Cm,
    pub z: Cm,
}

impl Placement {
    pub fn new(spec: BoxSpec, orientation: Orientation, x: Cm, y: Cm, z: Cm) -> Self {
        Self {
            spec,
            orientation,
            x,
            y,
            z,
        }
    }

    pub fn box_id(&self) -> BoxId {
        self.spec.id
    }

    pub fn dx(&self) -> Cm {
        self.orientation.dx
    }

    pub fn dy(&self) -> Cm {
        self.orientation.dy
    }

    pub fn dz(&self) -> Cm {
        self.orientation.dz
    }

    pub fn x_end(&self) -> Cm {
        self.x + self.orientation.dx
    }

    pub fn y_end(&self) -> Cm {
        self.y + self.orientation.dy
    }

    /// Height of the top face.
    pub fn top(&self) -> Cm {
        self.z + self.orientation.dz
    }

    /// True when the open base rectangles of `self` and `other` intersect.
    pub fn base_overlaps(&self, other: &Placement) -> bool {
        self.x.max(other.x) < self.x_end().min(other.x_end())
            && self.y.max(other.y) < self.y_end().min(other.y_end())
    }
}

/// A TU of a given type with its current load and extreme-point list.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTu {
    pub tu_type: TuType,
    pub placements: Vec<Placement>,
    pub eps: Vec<ExtremePoint>,
    total_weight: Kg,
}

impl LoadedTu {
    pub fn new(tu_type: TuType) -> Self {
        let origin = ExtremePoint::new(0, 0, 0, tu_type.x, tu_type.y, tu_type.z);
        Self {
            tu_type,
            placements: Vec::new(),
            eps: vec![origin],
            total_weight: 0,
        }
    }

    /// A TU holding the given placements, with its extreme points rebuilt by
    /// replaying the insertions in order.
    pub fn with_placements(tu_type: TuType, placements: Vec<Placement>) -> Self {
        let mut tu = Self::new(tu_type);
        tu.total_weight = placements.iter().map(|p| p.spec.weight).sum();
        tu.placements = placements;
        tu.rebuild_eps();
        tu
    }

    pub fn total_weight(&self) -> Kg {
        self.total_weight
    }

    /// NBOX: number of boxes loaded.
    pub fn nbox(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Σ box volumes in cm³.
    pub fn load_volume_cm3(&self) -> i64 {
        self.placements.iter().map(|p| p.spec.volume_cm3()).sum()
    }

    /// Highest top face among the placements (0 when empty).
    pub fn load_height(&self) -> Cm {
        self.placements
            .iter()
            .map(Placement::top)
            .max()
            .unwrap_or(0)
    }

    /// Smallest free margin between the load and the east or north wall.
    pub fn lateral_slack(&self) -> Cm {
        let east = self
            .placements
            .iter()
            .map(Placement::x_end)
            .max()
            .unwrap_or(0);
        let north = self
            .placements
            .iter()
            .map(Placement::y_end)
            .max()
            .unwrap_or(0);
        (self.tu_type.x - east).min(self.tu_type.y - north)
    }

    /// Appends a placement without touching the extreme points. Packing code
    /// uses `packer::insert` instead, which maintains them.
    pub(crate) fn push_placement(&mut self, placement: Placement) {
        self.total_weight += placement.spec.weight;
        self.placements.push(placement);
    }

    /// Removes the placement of `id`, returning it. The extreme-point list is
    /// rebuilt from the remaining placements.
    pub fn remove_box(&mut self, id: BoxId) -> Option<Placement> {
        let idx = self.placements.iter().position(|p| p.spec.id == id)?;
        let removed = self.placements.remove(idx);
        self.total_weight -= removed.spec.weight;
        self.rebuild_eps();
        Some(removed)
    }

    /// Recomputes the extreme-point list by replaying every placement in
    /// insertion order from an empty TU.
    pub fn rebuild_eps(&mut self) {
        let placements = std::mem::take(&mut self.placements);
        self.eps = vec![ExtremePoint::new(
            0,
            0,
            0,
            self.tu_type.x,
            self.tu_type.y,
            self.tu_type.z,
        )];
        for p in placements {
            if let Some(i) = self.eps.iter().position(|e| e.at(p.x, p.y, p.z)) {
                self.eps.remove(i);
            }
            self.placements.push(p);
            crate::packer::update_eps(self, &p);
        }
    }
}

/// A complete problem instance: boxes, TU catalog and objective weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub catalog: Vec<TuType>,
    pub boxes: Vec<BoxSpec>,
    pub objective: ObjectiveParams,
    /// Covering-model bound recorded when the instance was generated.
    pub lower_bound: Option<crate::forge::LowerBound>,
}

impl Instance {
    pub fn new(name: impl Into<String>, catalog: Vec<TuType>, boxes: Vec<BoxSpec>) -> Self {
        Self {
            name: name.into(),
            catalog,
            boxes,
            objective: ObjectiveParams::default(),
            lower_bound: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.catalog.is_empty() {
            return Err(Error::EmptyCatalog);
        }
        for t in &self.catalog {
            t.validate()?;
        }
        let mut seen = std::collections::HashSet::new();
        for b in &self.boxes {
            b.validate()?;
            if !seen.insert(b.id) {
                return Err(Error::InvalidBox {
                    id: b.id,
                    reason: "duplicate box id",
                });
            }
        }
        Ok(())
    }

    pub fn total_box_volume_cm3(&self) -> i64 {
        self.boxes.iter().map(BoxSpec::volume_cm3).sum()
    }

    pub fn find_type(&self, id: &str) -> Option<&TuType> {
        self.catalog.iter().find(|t| t.id == id)
    }
}
