//! Benchmark instances with a certified consolidation.
//!
//! A demand point is first covered by the cheapest TU multiset (the lower
//! bound). Every TU of that multiset is then carved into boxes by one of
//! three partition schemes, so putting the boxes back where they were carved
//! gives a feasible reference solution whose TU volume equals the bound.

mod calibrate;
mod lower_bound;
mod partition;
pub mod tables;

pub use calibrate::{calibrate_capacities, matching_rows, CalibrationResult};
pub use lower_bound::{solve_lower_bound, DemandPoint, LowerBound};
pub use partition::{partition_scheme1, partition_scheme2, partition_scheme3, PartitionBounds};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    BoxId, BoxSpec, Instance, Kg, LoadedTu, ObjectiveParams, Placement, Solution, TuType,
};

/// Default weight capacities (kg) of the six standard pallets, in
/// [`default_catalog`] order. Found by `examples/calibrate.rs`.
pub const DEFAULT_CAPACITIES: [Kg; 6] = [1000, 875, 1200, 525, 1500, 1700];

/// Instances whose reference optimum the default capacities reproduce.
pub const VALIDATION_ROWS: &[usize] = &[
    2, 7, 18, 21, 27, 29, 32, 33, 34, 37, 42, 43, 52, 59, 60, 67, 69, 73, 77, 83, 87,
];

/// The six standard pallet types with [`DEFAULT_CAPACITIES`].
pub fn default_catalog() -> Vec<TuType> {
    catalog_with_capacities(&DEFAULT_CAPACITIES)
}

/// The six standard pallet types with the given capacities.
pub fn catalog_with_capacities(caps: &[Kg; 6]) -> Vec<TuType> {
    const DIMS: [(i64, i64, i64); 6] = [
        (120, 80, 130),
        (120, 80, 160),
        (120, 100, 130),
        (120, 100, 160),
        (120, 120, 130),
        (120, 120, 160),
    ];
    DIMS.iter()
        .zip(caps)
        .map(|(&(x, y, z), &q)| {
            TuType::from_dims(x, y, z, q).expect("standard pallet dims are valid")
        })
        .collect()
}

/// Built-in demand point of benchmark instance `i` (1-based).
pub fn table_demand(i: usize) -> Option<DemandPoint> {
    let &(v, w) = tables::DEMANDS.get(i.checked_sub(1)?)?;
    Some(DemandPoint {
        volume_m3: v as f64,
        weight_kg: w as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Layers,
    Tunnels,
    Perfect,
}

impl Scheme {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Self::Layers),
            2 => Ok(Self::Tunnels),
            3 => Ok(Self::Perfect),
            _ => Err(Error::InvalidParameter(format!(
                "unknown partition scheme {n}"
            ))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::Layers => 1,
            Self::Tunnels => 2,
            Self::Perfect => 3,
        }
    }
}

/// Generator settings apart from the demand and catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForgeParams {
    pub scheme: Scheme,
    pub bounds: PartitionBounds,
    /// kg per m³ assigned uniformly to every box.
    pub density: f64,
    pub txz: bool,
    pub tyz: bool,
    pub stackable: bool,
    pub seed: u64,
}

impl Default for ForgeParams {
    fn default() -> Self {
        Self {
            scheme: Scheme::Perfect,
            bounds: PartitionBounds::default(),
            density: 107.0,
            txz: false,
            tyz: false,
            stackable: true,
            seed: 0,
        }
    }
}

/// A generated instance with its reference consolidation.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub instance: Instance,
    pub reference: Solution,
}

/// Weight in kg of a box of `volume_cm3` at `density` kg/m³, rounded half up.
pub fn box_weight(volume_cm3: i64, density: f64) -> Kg {
    (volume_cm3 as f64 * density / 1e6 + 0.5).floor() as Kg
}

/// Builds an instance for demand `d`: solve the lower bound, carve every TU
/// of it with the chosen scheme and record the carved layout as reference.
pub fn generate_instance(
    name: &str,
    d: &DemandPoint,
    catalog: &[TuType],
    objective: &ObjectiveParams,
    fp: &ForgeParams,
) -> Result<Generated> {
    let lb = solve_lower_bound(d, catalog, objective.beta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(fp.seed);
    let mut boxes = Vec::new();
    let mut tus = Vec::new();
    for (tut, &count) in catalog.iter().zip(&lb.counts) {
        for _ in 0..count {
            let carved = match fp.scheme {
                Scheme::Layers => partition_scheme1(tut, &fp.bounds, &mut rng)?,
                Scheme::Tunnels => partition_scheme2(tut, &fp.bounds, &mut rng)?,
                Scheme::Perfect => partition_scheme3(tut)?,
            };
            let placements: Vec<Placement> = carved
                .into_iter()
                .map(|mut p| {
                    p.spec = BoxSpec {
                        id: BoxId(boxes.len() as u32),
                        weight: box_weight(p.spec.volume_cm3(), fp.density),
                        txz: fp.txz,
                        tyz: fp.tyz,
                        stackable: fp.stackable,
                        ..p.spec
                    };
                    boxes.push(p.spec);
                    p
                })
                .collect();
            tus.push(LoadedTu::with_placements(tut.clone(), placements));
        }
    }
    let mut instance = Instance::new(name, catalog.to_vec(), boxes);
    instance.objective = *objective;
    instance.lower_bound = Some(lb);
    let reference = Solution::new(tus, Vec::new(), objective)?;
    Ok(Generated {
        instance,
        reference,
    })
}
