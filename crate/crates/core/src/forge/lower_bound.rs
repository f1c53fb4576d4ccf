use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::TuType;

/// Total box volume and weight that a consolidation must cover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandPoint {
    /// Volume in m³.
    pub volume_m3: f64,
    /// Weight in kg.
    pub weight_kg: f64,
}

impl DemandPoint {
    pub fn new(volume_m3: f64, weight_kg: f64) -> Result<Self> {
        if !(volume_m3 >= 0.0 && weight_kg >= 0.0) {
            return Err(Error::InvalidParameter(
                "demand must be non-negative".into(),
            ));
        }
        Ok(Self {
            volume_m3,
            weight_kg,
        })
    }
}

/// Optimal TU counts of the covering model, one entry per catalog type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub counts: Vec<u32>,
    /// Σ litres·x + β·Σx.
    pub objective: f64,
}

impl LowerBound {
    pub fn tu_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn volume_liters(&self, catalog: &[TuType]) -> f64 {
        self.counts
            .iter()
            .zip(catalog)
            .map(|(&c, t)| c as f64 * t.volume_liters())
            .sum()
    }

    /// Whether the counts cover `d` in both volume and weight.
    pub fn covers(&self, d: &DemandPoint, catalog: &[TuType]) -> bool {
        let (v, w) = coverage(&self.counts, catalog);
        v >= d.volume_m3 * 1e6 && w >= d.weight_kg
    }
}

fn coverage(counts: &[u32], catalog: &[TuType]) -> (f64, f64) {
    counts
        .iter()
        .zip(catalog)
        .fold((0.0, 0.0), |(v, w), (&c, t)| {
            (
                v + c as f64 * t.volume_cm3() as f64,
                w + c as f64 * t.capacity as f64,
            )
        })
}

struct Search<'a> {
    catalog: &'a [TuType],
    cost: Vec<f64>,
    vol: Vec<f64>,
    cap: Vec<f64>,
    need_v: f64,
    need_w: f64,
    ub: u32,
    /// Suffix minima of cost per cm³ and cost per kg over types i..
    per_v: Vec<f64>,
    per_w: Vec<f64>,
    counts: Vec<u32>,
    best: Option<(f64, Vec<u32>)>,
}

impl Search<'_> {
    fn bound(&self, i: usize, v: f64, w: f64) -> f64 {
        let rv = (self.need_v - v).max(0.0);
        let rw = (self.need_w - w).max(0.0);
        if rv == 0.0 && rw == 0.0 {
            return 0.0;
        }
        if i == self.catalog.len() {
            return f64::INFINITY;
        }
        (rv * self.per_v[i]).max(rw * self.per_w[i])
    }

    fn dfs(&mut self, i: usize, spent: f64, v: f64, w: f64) {
        if v >= self.need_v && w >= self.need_w {
            // remaining counts are zero: lexicographically smallest completion
            if self.best.as_ref().is_none_or(|(b, _)| spent < *b - 1e-9) {
                self.best = Some((spent, self.counts.clone()));
            }
            return;
        }
        if i == self.catalog.len() {
            return;
        }
        let lb = spent + self.bound(i, v, w);
        if self.best.as_ref().is_some_and(|(b, _)| lb > *b + 1e-9) {
            return;
        }
        for c in 0..=self.ub {
            self.counts[i] = c;
            let cf = c as f64;
            self.dfs(
                i + 1,
                spent + cf * self.cost[i],
                v + cf * self.vol[i],
                w + cf * self.cap[i],
            );
            let nv = v + cf * self.vol[i];
            let nw = w + cf * self.cap[i];
            if nv >= self.need_v && nw >= self.need_w {
                break;
            }
        }
        self.counts[i] = 0;
    }
}

/// Exact optimum of
///
/// ```text
/// min Σ litres_t·x_t + β·Σ x_t   s.t.  Σ v_t·x_t ≥ V,  Σ w_t·x_t ≥ W,  x ∈ ℕ
/// ```
///
/// by depth-first branch and bound over the catalog order. Among equal
/// objectives the lexicographically smallest count vector is returned.
pub fn solve_lower_bound(d: &DemandPoint, catalog: &[TuType], beta: f64) -> Result<LowerBound> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    for t in catalog {
        t.validate()?;
    }
    let need_v = d.volume_m3 * 1e6;
    let need_w = d.weight_kg;
    let vmin = catalog.iter().map(|t| t.volume_cm3()).min().unwrap() as f64;
    let wmin = catalog.iter().map(|t| t.capacity).min().unwrap() as f64;
    let ub = (need_v / vmin).ceil().max((need_w / wmin).ceil()).max(0.0) as u32;

    let n = catalog.len();
    let cost: Vec<f64> = catalog.iter().map(|t| t.volume_liters() + beta).collect();
    let vol: Vec<f64> = catalog.iter().map(|t| t.volume_cm3() as f64).collect();
    let cap: Vec<f64> = catalog.iter().map(|t| t.capacity as f64).collect();
    let mut per_v = vec![f64::INFINITY; n + 1];
    let mut per_w = vec![f64::INFINITY; n + 1];
    for i in (0..n).rev() {
        per_v[i] = per_v[i + 1].min(cost[i] / vol[i]);
        per_w[i] = per_w[i + 1].min(cost[i] / cap[i]);
    }

    let mut s = Search {
        catalog,
        cost,
        vol,
        cap,
        need_v,
        need_w,
        ub,
        per_v,
        per_w,
        counts: vec![0; n],
        best: None,
    };
    s.dfs(0, 0.0, 0.0, 0.0);
    let (objective, counts) = s
        .best
        .expect("the all-largest vector always covers the demand");
    Ok(LowerBound { counts, objective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::default_catalog;

    #[test]
    fn zero_demand_needs_nothing() {
        let lb = solve_lower_bound(
            &DemandPoint::new(0.0, 0.0).unwrap(),
            &default_catalog(),
            100.0,
        )
        .unwrap();
        assert_eq!(lb.counts, vec![0; 6]);
        assert_eq!(lb.objective, 0.0);
    }

    #[test]
    fn one_cubic_metre_fits_the_smallest_pallet() {
        let lb = solve_lower_bound(
            &DemandPoint::new(1.0, 949.0).unwrap(),
            &default_catalog(),
            100.0,
        )
        .unwrap();
        assert_eq!(lb.counts, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(lb.objective, 1348.0);
    }

    #[test]
    fn weight_forces_extra_units() {
        let cat = vec![TuType::from_dims(100, 100, 100, 10).unwrap()];
        let lb = solve_lower_bound(&DemandPoint::new(0.5, 35.0).unwrap(), &cat, 0.0).unwrap();
        assert_eq!(lb.counts, vec![4]);
    }

    #[test]
    fn ties_go_to_smallest_count_vector() {
        let a = TuType::new("a", 10, 10, 10, 5).unwrap();
        let b = TuType::new("b", 10, 10, 10, 5).unwrap();
        let lb = solve_lower_bound(&DemandPoint::new(0.0015, 0.0).unwrap(), &[a, b], 1.0).unwrap();
        assert_eq!(lb.counts, vec![0, 2]);
    }

    #[test]
    fn empty_catalog_is_rejected() {
        let d = DemandPoint::new(1.0, 1.0).unwrap();
        assert_eq!(solve_lower_bound(&d, &[], 1.0), Err(Error::EmptyCatalog));
    }
}
