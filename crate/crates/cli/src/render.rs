//! Static SVG drawings of loaded TUs: top (XY), front (XZ) and side (YZ) views.

use std::fmt::Write as _;

use atucp_core::geometry::{center_of_gravity, fill_rate, LoadedTu, Placement};

const SCALE: f64 = 2.0;
const MARGIN: f64 = 20.0;
const CAPTION: f64 = 24.0;
const LABEL: f64 = 16.0;

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

struct View {
    name: &'static str,
    /// Extents of the TU along the horizontal and vertical axis of the view.
    w: i64,
    h: i64,
    /// Rectangle of a placement: (u, v, du, dv).
    rect: fn(&Placement) -> (i64, i64, i64, i64),
    /// Painter's depth: larger is drawn later.
    depth: fn(&Placement) -> i64,
    point: fn([f64; 3]) -> (f64, f64),
}

fn views(tu: &LoadedTu) -> [View; 3] {
    let t = &tu.tu_type;
    [
        View {
            name: "XY",
            w: t.x,
            h: t.y,
            rect: |p| (p.x, p.y, p.dx(), p.dy()),
            depth: |p| p.top(),
            point: |c| (c[0], c[1]),
        },
        View {
            name: "XZ",
            w: t.x,
            h: t.z,
            rect: |p| (p.x, p.z, p.dx(), p.dz()),
            depth: |p| -p.y,
            point: |c| (c[0], c[2]),
        },
        View {
            name: "YZ",
            w: t.y,
            h: t.z,
            rect: |p| (p.y, p.z, p.dy(), p.dz()),
            depth: |p| -p.x,
            point: |c| (c[1], c[2]),
        },
    ]
}

/// Renders one TU. Box rectangles carry `class="box"`, the CG marker
/// `class="cg"` with the CG in cm as `data-x`, `data-y`, `data-z`.
pub fn render_tu(tu: &LoadedTu, index: usize) -> String {
    let vs = views(tu);
    let width = MARGIN + vs.iter().map(|v| v.w as f64 * SCALE + MARGIN).sum::<f64>();
    let tallest = vs.iter().map(|v| v.h).max().unwrap_or(0) as f64 * SCALE;
    let height = CAPTION + LABEL + tallest + 2.0 * MARGIN;
    let cg = center_of_gravity(tu).ok().map(|r| r.cg);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    let caption = match cg {
        Some(c) => format!(
            "TU {index} {} fill {:.2}% CG ({:.1}, {:.1}, {:.1})",
            tu.tu_type.id,
            fill_rate(tu),
            c[0],
            c[1],
            c[2]
        ),
        None => format!("TU {index} {} empty", tu.tu_type.id),
    };
    writeln!(
        s,
        r#"<text class="caption" x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="14">{caption}</text>"#,
        MARGIN + 4.0
    )
    .unwrap();

    let top = MARGIN + CAPTION + LABEL;
    let mut left = MARGIN;
    for v in &vs {
        let (pw, ph) = (v.w as f64 * SCALE, v.h as f64 * SCALE);
        let base = top + tallest;
        // view coordinates grow upwards
        let to_svg = |u: f64, w: f64| (left + u * SCALE, base - w * SCALE);
        writeln!(s, r#"<g class="view" id="{}">"#, v.name).unwrap();
        writeln!(
            s,
            r#"<text x="{left:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
            base - ph - 4.0,
            v.name
        )
        .unwrap();
        writeln!(
            s,
            r##"<rect class="frame" x="{left:.1}" y="{:.1}" width="{pw:.1}" height="{ph:.1}" fill="none" stroke="#000" stroke-width="1.5"/>"##,
            base - ph
        )
        .unwrap();
        let mut order: Vec<&Placement> = tu.placements.iter().collect();
        order.sort_by_key(|p| ((v.depth)(p), p.box_id()));
        for p in order {
            let (u, w, du, dw) = (v.rect)(p);
            let (x, y) = to_svg(u as f64, (w + dw) as f64);
            writeln!(
                s,
                r##"<rect class="box" data-box="{}" x="{x:.1}" y="{y:.1}" width="{:.1}" height="{:.1}" fill="{}" fill-opacity="0.8" stroke="#222" stroke-width="0.5"/>"##,
                p.box_id(),
                du as f64 * SCALE,
                dw as f64 * SCALE,
                PALETTE[p.box_id().0 as usize % PALETTE.len()]
            )
            .unwrap();
        }
        if let Some(c) = cg {
            let (u, w) = (v.point)(c);
            let (x, y) = to_svg(u, w);
            writeln!(
                s,
                r##"<circle class="cg" data-x="{}" data-y="{}" data-z="{}" cx="{x:.1}" cy="{y:.1}" r="4" fill="#d00" stroke="#fff"/>"##,
                c[0], c[1], c[2]
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
        left += pw + MARGIN;
    }
    writeln!(s, "</svg>").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use atucp_core::geometry::{BoxSpec, Orientation, OrientationCode, TuType};

    fn tu() -> LoadedTu {
        let spec = |id, w, l, h| BoxSpec::new(id, w, l, h, 5);
        let place = |b: BoxSpec, x, y, z| {
            Placement::new(b, Orientation::of(&b, OrientationCode(0)).unwrap(), x, y, z)
        };
        LoadedTu::with_placements(
            TuType::from_dims(120, 80, 130, 100).unwrap(),
            vec![
                place(spec(0, 60, 80, 50), 0, 0, 0),
                place(spec(1, 60, 40, 20), 60, 0, 0),
            ],
        )
    }

    #[test]
    fn draws_each_box_in_three_views() {
        let svg = render_tu(&tu(), 0);
        assert_eq!(svg.matches(r#"class="box""#).count(), 6);
        assert_eq!(svg.matches(r#"class="frame""#).count(), 3);
        assert_eq!(svg.matches(r#"class="cg""#).count(), 3);
        assert!(svg.contains(r#"version="1.1""#));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn cg_marker_matches_centre_of_gravity() {
        let t = tu();
        let cg = center_of_gravity(&t).unwrap().cg;
        let svg = render_tu(&t, 3);
        assert!(svg.contains(&format!(
            r#"data-x="{}" data-y="{}" data-z="{}""#,
            cg[0], cg[1], cg[2]
        )));
        assert!(svg.contains("TU 3 120x80x130"));
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(render_tu(&tu(), 0), render_tu(&tu(), 0));
    }
}
