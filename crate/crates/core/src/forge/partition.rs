use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoxSpec, Cm, Orientation, OrientationCode, Placement, TuType};

/// Per-axis limits on carved box dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartitionBounds {
    pub x_lb: Cm,
    pub x_ub: Cm,
    pub y_lb: Cm,
    pub y_ub: Cm,
    pub z_lb: Cm,
    pub z_ub: Cm,
}

impl Default for PartitionBounds {
    fn default() -> Self {
        Self::uniform(20, 60)
    }
}

impl PartitionBounds {
    pub fn uniform(lb: Cm, ub: Cm) -> Self {
        Self {
            x_lb: lb,
            x_ub: ub,
            y_lb: lb,
            y_ub: ub,
            z_lb: lb,
            z_ub: ub,
        }
    }

    pub fn validate(&self, tut: &TuType) -> Result<()> {
        let axes = [
            ("x", self.x_lb, self.x_ub, tut.x),
            ("y", self.y_lb, self.y_ub, tut.y),
            ("z", self.z_lb, self.z_ub, tut.z),
        ];
        for (axis, lb, ub, dim) in axes {
            if lb <= 0 || lb > ub {
                return Err(Error::InfeasibleBounds(format!(
                    "{axis}: need 0 < LB <= UB, got {lb}..{ub}"
                )));
            }
            if lb > dim {
                return Err(Error::InfeasibleBounds(format!(
                    "{axis}: LB {lb} exceeds TU dimension {dim} of {}",
                    tut.id
                )));
            }
        }
        Ok(())
    }
}

/// One cut along an axis with `left` cm remaining: the whole remainder when
/// it is at most `ub` or too short to leave two pieces of at least `lb`,
/// otherwise a uniform draw that leaves at least `lb` behind.
fn draw<R: Rng>(rng: &mut R, left: Cm, lb: Cm, ub: Cm) -> Cm {
    if left <= ub || left < 2 * lb {
        left
    } else {
        rng.gen_range(lb..=ub.min(left - lb))
    }
}

fn carve(out: &mut Vec<Placement>, dims: (Cm, Cm, Cm), at: (Cm, Cm, Cm)) {
    let spec = BoxSpec::new(out.len() as u32, dims.0, dims.1, dims.2, 0);
    let o = Orientation::of(&spec, OrientationCode(0)).expect("upright is always allowed");
    out.push(Placement::new(spec, o, at.0, at.1, at.2));
}

/// Layer-based partition: Z layers, each cut into X strips, each strip into
/// boxes along Y. Boxes are returned at their carved positions.
pub fn partition_scheme1<R: Rng>(
    tut: &TuType,
    b: &PartitionBounds,
    rng: &mut R,
) -> Result<Vec<Placement>> {
    b.validate(tut)?;
    let mut out = Vec::new();
    let mut z = 0;
    while z < tut.z {
        let zb = draw(rng, tut.z - z, b.z_lb, b.z_ub);
        let mut x = 0;
        while x < tut.x {
            let xb = draw(rng, tut.x - x, b.x_lb, b.x_ub);
            let mut y = 0;
            while y < tut.y {
                let yb = draw(rng, tut.y - y, b.y_lb, b.y_ub);
                carve(&mut out, (xb, yb, zb), (x, y, z));
                y += yb;
            }
            x += xb;
        }
        z += zb;
    }
    Ok(out)
}

/// A free cuboid owned by one generation point.
#[derive(Debug, Clone, Copy)]
struct Free {
    x: Cm,
    y: Cm,
    z: Cm,
    dx: Cm,
    dy: Cm,
    dz: Cm,
}

/// Tunnel partition. A box is seeded at the corner of a free cuboid, then the
/// tunnel behind one of its inner faces is cut into boxes up to the cuboid
/// wall:
///
/// * face 1 extends the seed along Z, leaving points north and east;
/// * face 2 extends it along X, leaving points north and up;
/// * face 3 extends it along Y, leaving points east and up.
///
/// Each new point owns the cuboid it leaves behind, so the leftovers never
/// overlap and the loop ends once the TU is fully carved.
pub fn partition_scheme2<R: Rng>(
    tut: &TuType,
    b: &PartitionBounds,
    rng: &mut R,
) -> Result<Vec<Placement>> {
    b.validate(tut)?;
    let mut out = Vec::new();
    let mut points = vec![Free {
        x: 0,
        y: 0,
        z: 0,
        dx: tut.x,
        dy: tut.y,
        dz: tut.z,
    }];
    while !points.is_empty() {
        let c = points.remove(rng.gen_range(0..points.len()));
        let xb = draw(rng, c.dx, b.x_lb, b.x_ub);
        let yb = draw(rng, c.dy, b.y_lb, b.y_ub);
        let zb = draw(rng, c.dz, b.z_lb, b.z_ub);
        carve(&mut out, (xb, yb, zb), (c.x, c.y, c.z));
        let north = |dx, dz| Free {
            x: c.x,
            y: c.y + yb,
            z: c.z,
            dx,
            dy: c.dy - yb,
            dz,
        };
        let east = |dz| Free {
            x: c.x + xb,
            y: c.y,
            z: c.z,
            dx: c.dx - xb,
            dy: c.dy,
            dz,
        };
        let up = Free {
            x: c.x,
            y: c.y,
            z: c.z + zb,
            dx: c.dx,
            dy: c.dy,
            dz: c.dz - zb,
        };
        let next = match rng.gen_range(1..=3) {
            1 => {
                let mut z = c.z + zb;
                while z < c.z + c.dz {
                    let zu = draw(rng, c.z + c.dz - z, b.z_lb, b.z_ub);
                    carve(&mut out, (xb, yb, zu), (c.x, c.y, z));
                    z += zu;
                }
                [north(xb, c.dz), east(c.dz)]
            }
            2 => {
                let mut x = c.x + xb;
                while x < c.x + c.dx {
                    let xu = draw(rng, c.x + c.dx - x, b.x_lb, b.x_ub);
                    carve(&mut out, (xu, yb, zb), (x, c.y, c.z));
                    x += xu;
                }
                [north(c.dx, zb), up]
            }
            _ => {
                let mut y = c.y + yb;
                while y < c.y + c.dy {
                    let yu = draw(rng, c.y + c.dy - y, b.y_lb, b.y_ub);
                    carve(&mut out, (xb, yu, zb), (c.x, y, c.z));
                    y += yu;
                }
                [east(zb), up]
            }
        };
        points.extend(
            next.into_iter()
                .filter(|f| f.dx > 0 && f.dy > 0 && f.dz > 0),
        );
    }
    Ok(out)
}

type Dims = (Cm, Cm, Cm);

/// Perfect-partition table: TU dims to box dims `(w, l, h)` and whether the
/// base is turned (length along X) when tiling.
const PERFECT: [(Dims, Dims, bool); 6] = [
    ((120, 80, 130), (40, 40, 65), false),
    ((120, 80, 160), (40, 30, 40), true),
    ((120, 100, 130), (40, 50, 65), false),
    ((120, 100, 160), (40, 50, 40), false),
    ((120, 120, 130), (40, 40, 65), false),
    ((120, 120, 160), (40, 40, 40), false),
];

/// Identical boxes exactly tiling one of the six standard pallet types.
pub fn partition_scheme3(tut: &TuType) -> Result<Vec<Placement>> {
    let &(_, (w, l, h), turned) = PERFECT
        .iter()
        .find(|(dims, _, _)| *dims == (tut.x, tut.y, tut.z))
        .ok_or_else(|| Error::UnknownType(tut.id.clone()))?;
    let code = OrientationCode(if turned { 1 } else { 0 });
    let mut out = Vec::new();
    let proto = BoxSpec::new(0, w, l, h, 0);
    let o = Orientation::of(&proto, code).expect("base swap is always allowed");
    for iz in 0..tut.z / o.dz {
        for ix in 0..tut.x / o.dx {
            for iy in 0..tut.y / o.dy {
                let spec = BoxSpec::new(out.len() as u32, w, l, h, 0);
                out.push(Placement::new(spec, o, ix * o.dx, iy * o.dy, iz * o.dz));
            }
        }
    }
    Ok(out)
}
