use serde::{Deserialize, Serialize};

use super::{BoxSpec, Cm};

/// One of the six assignments of a box's raw dimensions to the X, Y and Z axes.
///
/// | code | X      | Y      | Z      | requires |
/// |------|--------|--------|--------|----------|
/// | 0    | width  | length | height |          |
/// | 1    | length | width  | height |          |
/// | 2    | width  | height | length | `tyz`    |
/// | 3    | height | width  | length | `tyz`    |
/// | 4    | length | height | width  | `txz`    |
/// | 5    | height | length | width  | `txz`    |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientationCode(pub u8);

impl OrientationCode {
    pub const ALL: [OrientationCode; 6] = [
        OrientationCode(0),
        OrientationCode(1),
        OrientationCode(2),
        OrientationCode(3),
        OrientationCode(4),
        OrientationCode(5),
    ];

    /// Extents along (X, Y, Z) for a box with raw dimensions `(w, l, h)`.
    pub fn apply(self, w: Cm, l: Cm, h: Cm) -> Option<(Cm, Cm, Cm)> {
        Some(match self.0 {
            0 => (w, l, h),
            1 => (l, w, h),
            2 => (w, h, l),
            3 => (h, w, l),
            4 => (l, h, w),
            5 => (h, l, w),
            _ => return None,
        })
    }

    /// Whether `spec`'s rotation flags allow this code.
    pub fn allowed_for(self, spec: &BoxSpec) -> bool {
        match self.0 {
            0 | 1 => true,
            2 | 3 => spec.tyz,
            4 | 5 => spec.txz,
            _ => false,
        }
    }
}

/// An orientation together with the resolved extents along X, Y and Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    pub code: OrientationCode,
    pub dx: Cm,
    pub dy: Cm,
    pub dz: Cm,
}

impl Orientation {
    pub fn of(spec: &BoxSpec, code: OrientationCode) -> Option<Self> {
        let (dx, dy, dz) = code.apply(spec.width, spec.length, spec.height)?;
        Some(Self { code, dx, dy, dz })
    }

    pub fn extents(&self) -> (Cm, Cm, Cm) {
        (self.dx, self.dy, self.dz)
    }

    /// True when `self` is a permitted orientation of `spec` with consistent extents.
    pub fn is_valid_for(&self, spec: &BoxSpec) -> bool {
        self.code.allowed_for(spec) && Orientation::of(spec, self.code) == Some(*self)
    }
}

/// Allowed orientations of `spec` in code order, keeping only the first code
/// for each distinct extent triple.
pub fn enumerate_orientations(spec: &BoxSpec) -> Vec<Orientation> {
    let mut out: Vec<Orientation> = Vec::with_capacity(6);
    for code in OrientationCode::ALL {
        if !code.allowed_for(spec) {
            continue;
        }
        let Some(o) = Orientation::of(spec, code) else {
            continue;
        };
        if out.iter().all(|prev| prev.extents() != o.extents()) {
            out.push(o);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn extents(spec: &BoxSpec) -> Vec<(Cm, Cm, Cm)> {
        enumerate_orientations(spec)
            .iter()
            .map(Orientation::extents)
            .collect()
    }

    #[test]
    fn cube_has_single_orientation() {
        let cube = BoxSpec::new(1, 10, 10, 10, 1).with_rotation(true, true);
        assert_eq!(extents(&cube), vec![(10, 10, 10)]);
        assert_eq!(extents(&BoxSpec::new(1, 10, 10, 10, 1)), vec![(10, 10, 10)]);
    }

    #[test]
    fn upright_box_gets_base_swap_only() {
        let b = BoxSpec::new(1, 30, 40, 20, 1);
        assert_eq!(extents(&b), vec![(30, 40, 20), (40, 30, 20)]);
    }

    #[test]
    fn fully_rotatable_box_gets_six() {
        let b = BoxSpec::new(1, 30, 40, 20, 1).with_rotation(true, true);
        let got = extents(&b);
        assert_eq!(got.len(), 6);
        // every permutation of the raw dimensions, each exactly once
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn flags_gate_vertical_dimension() {
        let b = BoxSpec::new(1, 30, 40, 20, 1).with_rotation(true, false);
        let got = enumerate_orientations(&b);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|o| o.dz != 40));
        assert!(got.iter().any(|o| o.dz == 30));

        let b = BoxSpec::new(1, 30, 40, 20, 1).with_rotation(false, true);
        let got = enumerate_orientations(&b);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|o| o.dz != 30));
        assert!(got.iter().any(|o| o.dz == 40));
    }

    #[test]
    fn equal_sides_dedupe_by_extent() {
        // 40x40x65 with all rotations: three distinct triples
        let b = BoxSpec::new(1, 40, 40, 65, 1).with_rotation(true, true);
        assert_eq!(extents(&b), vec![(40, 40, 65), (40, 65, 40), (65, 40, 40)]);
    }

    #[test]
    fn validity_check_rejects_forbidden_code() {
        let b = BoxSpec::new(1, 30, 40, 20, 1);
        let o = Orientation::of(&b, OrientationCode(4)).unwrap();
        assert!(!o.is_valid_for(&b));
        let o = Orientation::of(&b, OrientationCode(1)).unwrap();
        assert!(o.is_valid_for(&b));
    }
}
