use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{enumerate_orientations, BoxSpec, Orientation, TuType};

/// Cluster counts for the box ordering: `n` weight bands, each split into
/// `m` base-area bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SortParams {
    pub n: u32,
    pub m: u32,
}

impl Default for SortParams {
    fn default() -> Self {
        Self { n: 4, m: 4 }
    }
}

impl SortParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidParameter(
                "sort cluster counts must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// A box with the minimum-height orientation used to rank it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SortedBox {
    pub spec: BoxSpec,
    pub orientation: Orientation,
}

/// 1-based band index of `value` among `bands` equal bands of `(0, cap]`;
/// values outside the range land in the first or last band.
fn band(value: i64, cap: i64, bands: u32) -> u32 {
    if value <= 0 || cap <= 0 {
        return 1;
    }
    let bands = bands as i128;
    // smallest i with value <= cap * i / bands
    let i = (value as i128 * bands + cap as i128 - 1) / cap as i128;
    i.clamp(1, bands) as u32
}

/// Orders boxes by weight band, then base-area band (both descending), then
/// by decreasing height; ties keep input order.
pub fn sort_boxes(boxes: &[BoxSpec], tut: &TuType, sp: &SortParams) -> Vec<SortedBox> {
    let mut keyed: Vec<(u32, u32, i64, SortedBox)> = boxes
        .iter()
        .map(|spec| {
            let orientation = enumerate_orientations(spec)
                .into_iter()
                .min_by_key(|o| o.dz)
                .expect("every box has an upright orientation");
            let wb = band(spec.weight, tut.capacity, sp.n);
            let ab = band(orientation.dx * orientation.dy, tut.base_area(), sp.m);
            (
                wb,
                ab,
                orientation.dz,
                SortedBox {
                    spec: *spec,
                    orientation,
                },
            )
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)));
    keyed.into_iter().map(|k| k.3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(sorted: &[SortedBox]) -> Vec<u32> {
        sorted.iter().map(|s| s.spec.id.0).collect()
    }

    #[test]
    fn band_edges() {
        // (0, 250], (250, 500], (500, 750], (750, 1000]
        assert_eq!(band(250, 1000, 4), 1);
        assert_eq!(band(251, 1000, 4), 2);
        assert_eq!(band(1000, 1000, 4), 4);
        assert_eq!(band(5000, 1000, 4), 4);
        assert_eq!(band(0, 1000, 4), 1);
    }

    #[test]
    fn single_box_is_laid_flat() {
        let tut = TuType::from_dims(120, 80, 130, 1000).unwrap();
        let b = BoxSpec::new(1, 30, 40, 20, 1).with_rotation(true, true);
        let tall = BoxSpec::new(2, 20, 30, 40, 1).with_rotation(true, true);
        let sorted = sort_boxes(&[tall], &tut, &SortParams::default());
        assert_eq!(sorted[0].orientation.dz, 20);
        let sorted = sort_boxes(&[b], &tut, &SortParams::default());
        assert_eq!(sorted[0].orientation.extents(), (30, 40, 20));
    }

    #[test]
    fn larger_base_first_at_equal_weight() {
        let tut = TuType::from_dims(120, 80, 130, 1000).unwrap();
        let small = BoxSpec::new(1, 40, 30, 10, 5); // 1200 cm²
        let large = BoxSpec::new(2, 80, 60, 10, 5); // 4800 cm²
        let sorted = sort_boxes(&[small, large], &tut, &SortParams::default());
        assert_eq!(ids(&sorted), vec![2, 1]);
    }

    #[test]
    fn weight_then_base_clusters() {
        // n = m = 2, Q = 1000, base 120x80 = 9600
        let tut = TuType::from_dims(120, 80, 130, 1000).unwrap();
        let sp = SortParams { n: 2, m: 2 };
        let heavy = BoxSpec::new(1, 10, 100, 5, 900); // base 1000
        let wide = BoxSpec::new(2, 90, 100, 5, 100); // base 9000
        let tiny = BoxSpec::new(3, 10, 10, 50, 100); // base 100
        let sorted = sort_boxes(&[tiny, wide, heavy], &tut, &sp);
        assert_eq!(ids(&sorted), vec![1, 2, 3]);
    }

    #[test]
    fn height_breaks_ties_within_cluster() {
        let tut = TuType::from_dims(120, 80, 130, 1000).unwrap();
        let low = BoxSpec::new(1, 20, 20, 10, 1);
        let high = BoxSpec::new(2, 20, 20, 30, 1);
        let same = BoxSpec::new(3, 20, 20, 10, 1);
        let sorted = sort_boxes(&[low, high, same], &tut, &SortParams::default());
        assert_eq!(ids(&sorted), vec![2, 1, 3]);
    }
}
