//! SVG drawings of discs with accordions and colorations on top.

use std::f64::consts::PI;
use std::fmt::Write;

use super::monogeneous::{Color, Coloration};
use super::MarkedDisc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Proj,
    Delta,
    ResMember,
}

impl Role {
    fn class(self) -> &'static str {
        match self {
            Role::Proj => "proj",
            Role::Delta => "delta",
            Role::ResMember => "resmember",
        }
    }
}

/// Red chords to draw over the disc, plus an optional coloration.
#[derive(Clone, Debug, Default)]
pub struct Overlay {
    pub chords: Vec<((usize, usize), Role)>,
    pub coloration: Option<Coloration>,
}

const SIZE: f64 = 400.0;
const CENTRE: f64 = SIZE / 2.0;
const RADIUS: f64 = 160.0;

fn point(size: usize, p: usize, r: f64) -> (f64, f64) {
    // Point 0 at the top, numbering clockwise.
    let a = 2.0 * PI * p as f64 / size as f64;
    (CENTRE + r * a.sin(), CENTRE - r * a.cos())
}

/// A chord bowed towards the centre, as a quadratic curve.
fn chord_path(size: usize, a: usize, b: usize) -> String {
    let (x1, y1) = point(size, a, RADIUS);
    let (x2, y2) = point(size, b, RADIUS);
    let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
    let (cx, cy) = (CENTRE + (mx - CENTRE) * 0.35, CENTRE + (my - CENTRE) * 0.35);
    format!("M {x1:.2} {y1:.2} Q {cx:.2} {cy:.2} {x2:.2} {y2:.2}")
}

fn glyph(out: &mut String, size: usize, p: usize, c: Color) {
    let (x, y) = point(size, p, RADIUS + 16.0);
    let h = 5.0;
    let class = format!("color-{}", c.name());
    match c {
        Color::Red | Color::Green => {
            let _ = writeln!(
                out,
                r#"  <rect class="{class}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                x - h,
                y - h,
                2.0 * h,
                2.0 * h
            );
        }
        Color::Orange => {
            let _ = writeln!(
                out,
                r#"  <g class="{class}"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/><path d="M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}"/></g>"#,
                x - h,
                y - h,
                2.0 * h,
                2.0 * h,
                x - h,
                y - h,
                x + h,
                y + h,
                x - h,
                y + h,
                x + h,
                y - h
            );
        }
        Color::Pink => {
            let _ = writeln!(
                out,
                r#"  <path class="{class}" d="M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}"/>"#,
                x - h,
                y - h,
                x + h,
                y + h,
                x - h,
                y + h,
                x + h,
                y - h
            );
        }
    }
}

const STYLE: &str = "\
    circle.boundary { fill: none; stroke: black; stroke-width: 2; }
    circle.green { fill: white; stroke: #1a7f37; stroke-width: 2; }
    circle.red { fill: #d1242f; }
    path.arc { fill: none; stroke: #1a7f37; stroke-width: 2; }
    path.proj { fill: none; stroke: #d1242f; stroke-width: 2; stroke-dasharray: 2 3; }
    path.delta { fill: none; stroke: #0969da; stroke-width: 2.5; stroke-dasharray: 1 4; }
    path.resmember { fill: none; stroke: #8250df; stroke-width: 2; stroke-dasharray: 8 3 2 3; }
    .color-red { fill: #d1242f; }
    .color-green { fill: white; stroke: #1a7f37; stroke-width: 2; }
    .color-orange { fill: white; stroke: #bc4c00; stroke-width: 2; }
    .color-pink { fill: none; stroke: #bf3989; stroke-width: 2; }
    text { font: 11px sans-serif; fill: #1a7f37; }
";

/// Deterministic SVG for `d` with `overlay` drawn on top.
pub fn render_svg(d: &MarkedDisc, overlay: &Overlay) -> String {
    let n = d.size();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "  <style>\n{STYLE}  </style>");
    let _ = writeln!(out, r#"  <circle class="boundary" cx="{CENTRE}" cy="{CENTRE}" r="{RADIUS}"/>"#);
    for v in 0..d.num_arcs() {
        let v = crate::quiver::VertexId(v);
        let (a, b) = d.arc(v);
        let _ = writeln!(out, r#"  <path class="arc" d="{}"/>"#, chord_path(n, a, b));
        let (x1, y1) = point(n, a, RADIUS);
        let (x2, y2) = point(n, b, RADIUS);
        let (tx, ty) = (CENTRE + ((x1 + x2) / 2.0 - CENTRE) * 0.6, CENTRE + ((y1 + y2) / 2.0 - CENTRE) * 0.6);
        let _ = writeln!(out, r#"  <text x="{tx:.2}" y="{ty:.2}">{}</text>"#, escape(d.label(v)));
    }
    let mut chords = overlay.chords.clone();
    chords.sort();
    for ((a, b), role) in chords {
        let _ = writeln!(out, r#"  <path class="{}" d="{}"/>"#, role.class(), chord_path(n, a, b));
    }
    for p in 0..n {
        let (x, y) = point(n, p, RADIUS);
        let class = if p % 2 == 0 { "green" } else { "red" };
        let _ = writeln!(out, r#"  <circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="4"/>"#);
    }
    if let Some(c) = &overlay.coloration {
        for (&p, &col) in &c.colors {
            glyph(&mut out, n, p, col);
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{build_disc, coloration, geo_res_set, DiscModel};
    use crate::strings::fixtures::*;

    #[test]
    fn a2_has_six_points() {
        let d = build_disc(&a2()).unwrap();
        let svg = render_svg(&d, &Overlay::default());
        assert_eq!(svg.matches(r#"<circle class="green""#).count(), 3);
        assert_eq!(svg.matches(r#"<circle class="red""#).count(), 3);
    }

    #[test]
    fn output_is_stable() {
        let m = DiscModel::new(&a3_rel()).unwrap();
        let d = (0..m.accordions().len()).find(|&i| !m.is_projective_index(i)).unwrap();
        let mut chords: Vec<_> = m.projective_dissection().iter().map(|a| (a.ends, Role::Proj)).collect();
        chords.extend(geo_res_set(&m, d).into_iter().map(|i| (m.accordions()[i].ends, Role::ResMember)));
        chords.push((m.accordions()[d].ends, Role::Delta));
        let overlay = Overlay { chords, coloration: Some(coloration(&m, d)) };
        let a = render_svg(m.disc(), &overlay);
        let b = render_svg(m.disc(), &overlay);
        assert_eq!(a, b);
        assert!(a.contains(r#"class="delta""#) && a.contains(r#"class="proj""#));
        assert!(a.contains("color-"));
    }
}
