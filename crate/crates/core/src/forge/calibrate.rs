use crate::geometry::Kg;

use super::{catalog_with_capacities, solve_lower_bound, tables, DemandPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationResult {
    pub capacities: [Kg; 6],
    /// 1-based instance numbers whose reference optimum is reproduced.
    pub rows: Vec<usize>,
}

/// Instances whose covering-model optimum under `caps` equals the reference one.
pub fn matching_rows(caps: &[Kg; 6], beta: f64) -> Vec<usize> {
    let catalog = catalog_with_capacities(caps);
    tables::DEMANDS
        .iter()
        .zip(tables::REFERENCE_OPTIMA.iter())
        .enumerate()
        .filter(|(_, (&(v, w), want))| {
            let d = DemandPoint {
                volume_m3: v as f64,
                weight_kg: w as f64,
            };
            solve_lower_bound(&d, &catalog, beta).is_ok_and(|lb| lb.counts == want[..])
        })
        .map(|(i, _)| i + 1)
        .collect()
}

/// Coordinate search for capacities maximising the number of reproduced
/// reference optima. Each pass scans every capacity over `lo..=hi` in
/// `step` increments with the others held fixed; the search stops when a
/// pass brings no gain.
pub fn calibrate_capacities(
    start: [Kg; 6],
    lo: Kg,
    hi: Kg,
    step: Kg,
    beta: f64,
) -> CalibrationResult {
    let mut caps = start;
    let mut rows = matching_rows(&caps, beta);
    loop {
        let before = rows.len();
        for k in 0..6 {
            let mut v = lo;
            while v <= hi {
                let mut trial = caps;
                trial[k] = v;
                let r = matching_rows(&trial, beta);
                if r.len() > rows.len() {
                    caps = trial;
                    rows = r;
                }
                v += step;
            }
        }
        if rows.len() == before {
            return CalibrationResult {
                capacities: caps,
                rows,
            };
        }
    }
}
