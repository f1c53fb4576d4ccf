use serde::{Deserialize, Serialize};

use super::{BoxId, LoadedTu};
use crate::error::{Error, Result};

/// Centre of gravity of a loaded TU and its normalised centering measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgReport {
    /// CG coordinates in cm.
    pub cg: [f64; 3],
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
    /// `mx + my`; zero when the CG projects onto the centre of the base.
    pub mxy: f64,
}

/// Weights of the FITNESS objective. Volumes enter in litres, so `theta` and
/// `beta` are litre-scale quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObjectiveParams {
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
}

impl Default for ObjectiveParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            theta: 100.0,
            beta: 100.0,
        }
    }
}

impl ObjectiveParams {
    pub fn validate(&self) -> Result<()> {
        if self.alpha < 0.0 || self.theta < 0.0 || self.beta < 0.0 {
            return Err(Error::InvalidParameter(
                "objective weights must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Weight-averaged centre of the box centres. A TU whose boxes all weigh
/// zero falls back to volume weighting.
///
/// Sums are accumulated in integers (doubled coordinates times weights), so
/// the result does not depend on placement order.
pub fn center_of_gravity(tu: &LoadedTu) -> Result<CgReport> {
    if tu.placements.is_empty() {
        return Err(Error::EmptyTu);
    }
    let weight_total: i128 = tu.placements.iter().map(|p| p.spec.weight as i128).sum();
    let use_volume = weight_total == 0;
    let mass = |p: &super::Placement| -> i128 {
        if use_volume {
            p.spec.volume_cm3() as i128
        } else {
            p.spec.weight as i128
        }
    };
    let total: i128 = if use_volume {
        tu.placements.iter().map(mass).sum()
    } else {
        weight_total
    };
    let (mut sx, mut sy, mut sz) = (0i128, 0i128, 0i128);
    for p in &tu.placements {
        let m = mass(p);
        sx += (2 * p.x + p.dx()) as i128 * m;
        sy += (2 * p.y + p.dy()) as i128 * m;
        sz += (2 * p.z + p.dz()) as i128 * m;
    }
    let t = &tu.tu_type;
    let (x, y, z) = (t.x as i128, t.y as i128, t.z as i128);
    let mx = (sx - x * total).abs() as f64 / (x * total) as f64;
    let my = (sy - y * total).abs() as f64 / (y * total) as f64;
    let mz = sz as f64 / (2 * z * total) as f64;
    let denom = (2 * total) as f64;
    Ok(CgReport {
        cg: [sx as f64 / denom, sy as f64 / denom, sz as f64 / denom],
        mx,
        my,
        mz,
        mxy: mx + my,
    })
}

/// Loaded box volume as a percentage of the TU volume.
pub fn fill_rate(tu: &LoadedTu) -> f64 {
    tu.load_volume_cm3() as f64 / tu.tu_type.volume_cm3() as f64 * 100.0
}

/// Σ over TUs of `V + α·(Mxy·Mz + Θ)`, plus `β·|TUL|`.
///
/// Per-TU terms are summed in sorted order so the value is independent of the
/// order of the TU list.
pub fn fitness(tus: &[LoadedTu], params: &ObjectiveParams) -> Result<f64> {
    let mut terms = Vec::with_capacity(tus.len());
    for tu in tus {
        let cg = center_of_gravity(tu)?;
        terms.push(tu.tu_type.volume_liters() + params.alpha * (cg.mxy * cg.mz + params.theta));
    }
    terms.sort_by(f64::total_cmp);
    Ok(terms.iter().sum::<f64>() + params.beta * tus.len() as f64)
}

/// A consolidation: the loaded TUs plus any boxes left out, with the cached
/// FITNESS value.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub tus: Vec<LoadedTu>,
    pub unplaced: Vec<BoxId>,
    pub fitness: f64,
}

impl Solution {
    pub fn new(tus: Vec<LoadedTu>, unplaced: Vec<BoxId>, params: &ObjectiveParams) -> Result<Self> {
        let fitness = fitness(&tus, params)?;
        Ok(Self {
            tus,
            unplaced,
            fitness,
        })
    }

    pub fn empty() -> Self {
        Self {
            tus: Vec::new(),
            unplaced: Vec::new(),
            fitness: 0.0,
        }
    }

    pub fn recompute(&mut self, params: &ObjectiveParams) -> Result<()> {
        self.fitness = fitness(&self.tus, params)?;
        Ok(())
    }

    pub fn box_count(&self) -> usize {
        self.tus.iter().map(LoadedTu::nbox).sum()
    }

    /// Σ TU volumes in litres.
    pub fn total_volume_liters(&self) -> f64 {
        self.tus.iter().map(|t| t.tu_type.volume_liters()).sum()
    }

    /// Number of TUs per type id, sorted by id.
    pub fn type_counts(&self) -> Vec<(String, usize)> {
        let mut map = std::collections::BTreeMap::<String, usize>::new();
        for tu in &self.tus {
            *map.entry(tu.tu_type.id.clone()).or_default() += 1;
        }
        map.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoxSpec, Orientation, OrientationCode, Placement, TuType};

    type Dims = (i64, i64, i64);

    fn tu_with(boxes: &[(Dims, Dims, i64)]) -> LoadedTu {
        let t = TuType::from_dims(120, 80, 160, 1000).unwrap();
        let placements = boxes
            .iter()
            .enumerate()
            .map(|(i, &((x, y, z), (w, l, h), kg))| {
                let spec = BoxSpec::new(i as u32, w, l, h, kg);
                Placement::new(
                    spec,
                    Orientation::of(&spec, OrientationCode(0)).unwrap(),
                    x,
                    y,
                    z,
                )
            })
            .collect();
        LoadedTu::with_placements(t, placements)
    }

    #[test]
    fn centered_single_box() {
        let cg = center_of_gravity(&tu_with(&[((0, 0, 0), (120, 80, 50), 10)])).unwrap();
        assert_eq!(cg.cg, [60.0, 40.0, 25.0]);
        assert_eq!(cg.mxy, 0.0);
        assert_eq!(cg.mz, 25.0 / 160.0);
    }

    #[test]
    fn corner_box_measures() {
        // CG (30, 20, 25): |60-120|/120 = 0.5, |40-80|/80 = 0.5
        let cg = center_of_gravity(&tu_with(&[((0, 0, 0), (60, 40, 50), 10)])).unwrap();
        assert_eq!(cg.cg, [30.0, 20.0, 25.0]);
        assert_eq!(cg.mx, 0.5);
        assert_eq!(cg.my, 0.5);
    }

    #[test]
    fn mirrored_pair_is_centered() {
        let cg = center_of_gravity(&tu_with(&[
            ((0, 0, 0), (1, 1, 1), 5),
            ((119, 79, 0), (1, 1, 1), 5),
        ]))
        .unwrap();
        assert_eq!(cg.mxy, 0.0);
    }

    #[test]
    fn zero_weight_falls_back_to_volume() {
        let cg = center_of_gravity(&tu_with(&[
            ((0, 0, 0), (60, 80, 10), 0),
            ((60, 0, 0), (20, 80, 10), 0),
        ]))
        .unwrap();
        // volumes 48000 and 16000 at x-centres 30 and 70
        assert_eq!(cg.cg[0], (30.0 * 3.0 + 70.0) / 4.0);
    }

    #[test]
    fn empty_tu_has_no_cg() {
        let t = TuType::from_dims(120, 80, 160, 1000).unwrap();
        assert_eq!(center_of_gravity(&LoadedTu::new(t)), Err(Error::EmptyTu));
    }

    #[test]
    fn fitness_single_tu() {
        // V = 1536 L, Mxy = 0, Mz = 0.5
        let tu = tu_with(&[((0, 0, 0), (120, 80, 160), 10)]);
        let p = ObjectiveParams::default();
        assert_eq!(fitness(std::slice::from_ref(&tu), &p).unwrap(), 1736.0);
        assert_eq!(fitness(&[tu.clone(), tu], &p).unwrap(), 3472.0);
        assert_eq!(fitness(&[], &p).unwrap(), 0.0);
    }

    #[test]
    fn fill_rates() {
        assert_eq!(fill_rate(&tu_with(&[((0, 0, 0), (60, 40, 40), 1)])), 6.25);
        let t = TuType::from_dims(120, 80, 160, 1000).unwrap();
        assert_eq!(fill_rate(&LoadedTu::new(t)), 0.0);
    }
}
