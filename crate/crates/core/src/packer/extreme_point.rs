use serde::{Deserialize, Serialize};

use crate::geometry::{Cm, LoadedTu, Placement, TuType};

/// A candidate anchor for a box's west-south-down corner.
///
/// `rx`, `ry` and `rz` bound the extent a box placed here may have along each
/// axis: the distance from the point to the nearest box face or wall hit by
/// a ray cast along that axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremePoint {
    pub x: Cm,
    pub y: Cm,
    pub z: Cm,
    pub rx: Cm,
    pub ry: Cm,
    pub rz: Cm,
}

impl ExtremePoint {
    pub fn new(x: Cm, y: Cm, z: Cm, rx: Cm, ry: Cm, rz: Cm) -> Self {
        Self {
            x,
            y,
            z,
            rx,
            ry,
            rz,
        }
    }

    /// An extreme point at `(x, y, z)` with residuals measured against `placements`.
    pub fn measured(tut: &TuType, placements: &[Placement], x: Cm, y: Cm, z: Cm) -> Self {
        let mut ep = Self::new(x, y, z, tut.x - x, tut.y - y, tut.z - z);
        for p in placements {
            ep.obstruct(p);
        }
        ep
    }

    pub fn at(&self, x: Cm, y: Cm, z: Cm) -> bool {
        self.x == x && self.y == y && self.z == z
    }

    /// A point with a zero residual can never host a box.
    pub fn is_usable(&self) -> bool {
        self.rx > 0 && self.ry > 0 && self.rz > 0
    }

    /// Shrinks the residuals to account for `p`.
    pub fn obstruct(&mut self, p: &Placement) {
        let in_y = p.y <= self.y && self.y < p.y_end();
        let in_x = p.x <= self.x && self.x < p.x_end();
        let in_z = p.z <= self.z && self.z < p.top();
        if in_y && in_z && p.x_end() > self.x {
            self.rx = self.rx.min((p.x - self.x).max(0));
        }
        if in_x && in_z && p.y_end() > self.y {
            self.ry = self.ry.min((p.y - self.y).max(0));
        }
        if in_x && in_y && p.top() > self.z {
            self.rz = self.rz.min((p.z - self.z).max(0));
        }
    }
}

/// Drops `(x, y)` down until it rests on the TU floor or a top face at or below `z`.
fn project_down(placements: &[Placement], x: Cm, y: Cm, z: Cm) -> Cm {
    placements
        .iter()
        .filter(|p| p.x <= x && x < p.x_end() && p.y <= y && y < p.y_end() && p.top() <= z)
        .map(Placement::top)
        .max()
        .unwrap_or(0)
}

/// Slides a point south until it meets the XZ wall or a north face.
fn project_south(placements: &[Placement], x: Cm, y: Cm, z: Cm) -> Cm {
    placements
        .iter()
        .filter(|p| p.x <= x && x < p.x_end() && p.z <= z && z < p.top() && p.y_end() <= y)
        .map(Placement::y_end)
        .max()
        .unwrap_or(0)
}

/// Slides a point west until it meets the YZ wall or an east face.
fn project_west(placements: &[Placement], x: Cm, y: Cm, z: Cm) -> Cm {
    placements
        .iter()
        .filter(|p| p.y <= y && y < p.y_end() && p.z <= z && z < p.top() && p.x_end() <= x)
        .map(Placement::x_end)
        .max()
        .unwrap_or(0)
}

/// New extreme points created by `placed`, which must already be part of
/// `tu.placements`:
///
/// 1. east-south-down corner, dropped down then slid south;
/// 2. west-north-down corner, dropped down then slid west;
/// 3. west-south-up corner (stackable boxes only);
/// 4. that corner slid south;
/// 5. that corner slid west.
///
/// Points coinciding with each other or with an existing extreme point are
/// merged, and points with a zero residual are discarded.
pub fn generate_eps(tu: &LoadedTu, placed: &Placement) -> Vec<ExtremePoint> {
    let ps = &tu.placements;
    let mut raw: Vec<(Cm, Cm, Cm)> = Vec::with_capacity(5);

    let (ex, ey) = (placed.x_end(), placed.y);
    let ez = project_down(ps, ex, ey, placed.z);
    raw.push((ex, project_south(ps, ex, ey, ez), ez));

    let (nx, ny) = (placed.x, placed.y_end());
    let nz = project_down(ps, nx, ny, placed.z);
    raw.push((project_west(ps, nx, ny, nz), ny, nz));

    if placed.spec.stackable {
        let (ux, uy, uz) = (placed.x, placed.y, placed.top());
        raw.push((ux, uy, uz));
        raw.push((ux, project_south(ps, ux, uy, uz), uz));
        raw.push((project_west(ps, ux, uy, uz), uy, uz));
    }

    let tut = &tu.tu_type;
    let mut out: Vec<ExtremePoint> = Vec::with_capacity(raw.len());
    for (x, y, z) in raw {
        if x >= tut.x || y >= tut.y || z >= tut.z {
            continue;
        }
        if tu.eps.iter().chain(out.iter()).any(|e| e.at(x, y, z)) {
            continue;
        }
        let ep = ExtremePoint::measured(tut, ps, x, y, z);
        if ep.is_usable() {
            out.push(ep);
        }
    }
    out
}

/// Refreshes the extreme-point list after `placed` was pushed onto `tu`:
/// existing residuals shrink against the new box, dead points are dropped,
/// then the newly generated points are appended.
pub fn update_eps(tu: &mut LoadedTu, placed: &Placement) {
    for ep in tu.eps.iter_mut() {
        ep.obstruct(placed);
    }
    tu.eps.retain(ExtremePoint::is_usable);
    let fresh = generate_eps(tu, placed);
    tu.eps.extend(fresh);
}
