//! SVG and ASCII drawings of designs.
//!
//! Marker glyphs: □ hollow square for a quarter-turn, ■ filled square for a
//! quarter-turn with τ, hollow lens for a half-turn, filled lens for a
//! half-turn with τ. The G₁ lattice unit is outlined solid, lower-level units
//! about the same centre dashed.

use std::fmt::Write as _;

use crate::grid::{Design, HalfPoint};
use crate::lattice::{Lattice, Vec2};
use crate::symmetry::{classify_surveyed, SymmetrySurvey};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell_size: u32,
    pub show_markers: bool,
    pub show_lattice: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell_size: 20,
            show_markers: true,
            show_lattice: true,
        }
    }
}

/// Points congruent to `p` modulo `lattice` (doubled units) inside `[0, 2T]²`.
fn translates(p: HalfPoint, fine: &Lattice, t: i64) -> Vec<HalfPoint> {
    let mut out = Vec::new();
    for dy in 0..=2 * t {
        for dx in 0..=2 * t {
            if fine.contains((dx - p.dx, dy - p.dy)) {
                out.push(HalfPoint::new(dx, dy));
            }
        }
    }
    out
}

struct Canvas {
    cs: f64,
    t: i64,
}

impl Canvas {
    fn xy(&self, p: (f64, f64)) -> (f64, f64) {
        // Doubled plane coordinates to SVG pixels, y pointing down.
        (p.0 * self.cs / 2.0, (2.0 * self.t as f64 - p.1) * self.cs / 2.0)
    }
}

pub fn render_svg(d: &Design, r: &RenderSpec, survey: Option<&SymmetrySurvey>) -> String {
    let t = d.side() as i64;
    let cs = r.cell_size.max(1) as f64;
    let size = cs * t as f64;
    let cv = Canvas { cs, t };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, r##"<rect width="{size}" height="{size}" fill="#f4f0e6"/>"##);
    for y in 0..t {
        for x in 0..t {
            if d.get(x, y) {
                let (px, py) = (x as f64 * cs, (t - 1 - y) as f64 * cs);
                let _ = writeln!(
                    s,
                    r##"<rect x="{px}" y="{py}" width="{cs}" height="{cs}" fill="#2b2b2b"/>"##
                );
            }
        }
    }
    if let Some(sv) = survey {
        let fine = sv.translations.scaled(2);
        if r.show_lattice {
            if let Ok(c) = classify_surveyed(d, sv) {
                if let Some(rep) = c.report() {
                    draw_units(&mut s, &cv, rep.centre, rep.side, rep.g1_unit.level);
                }
            }
        }
        if r.show_markers {
            let m = cs * 0.3;
            for &(p, tau) in &sv.half_centres {
                if sv.quarter_centres.iter().any(|&(q, _)| fine.contains((q.dx - p.dx, q.dy - p.dy))) {
                    continue;
                }
                for q in translates(p, &fine, t) {
                    let (x, y) = cv.xy((q.dx as f64, q.dy as f64));
                    let fill = if tau { "#c0392b" } else { "none" };
                    let _ = writeln!(
                        s,
                        r##"<ellipse cx="{x}" cy="{y}" rx="{}" ry="{}" fill="{fill}" stroke="#c0392b" stroke-width="1.5"/>"##,
                        m * 0.8,
                        m * 0.45
                    );
                }
            }
            for &(p, tau) in &sv.quarter_centres {
                for q in translates(p, &fine, t) {
                    let (x, y) = cv.xy((q.dx as f64, q.dy as f64));
                    let fill = if tau { "#1f6fb2" } else { "white" };
                    let _ = writeln!(
                        s,
                        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#1f6fb2" stroke-width="1.5"/>"##,
                        x - m / 2.0,
                        y - m / 2.0,
                        m,
                        m
                    );
                }
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn polygon(s: &mut String, cv: &Canvas, pts: &[(f64, f64)], dashed: bool) {
    let list: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = cv.xy(p);
            format!("{x},{y}")
        })
        .collect();
    let dash = if dashed { r#" stroke-dasharray="6,4""# } else { "" };
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"{dash}/>"#,
        list.join(" ")
    );
}

fn draw_units(s: &mut String, cv: &Canvas, centre: HalfPoint, side: Vec2, level: u8) {
    let c = (centre.dx as f64, centre.dy as f64);
    // In doubled units the corners are c ± (w ± Rw).
    let mut w = (side.0 as f64, side.1 as f64);
    for k in 0..level {
        let rw = (-w.1, w.0);
        let pts = [
            (c.0 + w.0 + rw.0, c.1 + w.1 + rw.1),
            (c.0 - w.0 + rw.0, c.1 - w.1 + rw.1),
            (c.0 - w.0 - rw.0, c.1 - w.1 - rw.1),
            (c.0 + w.0 - rw.0, c.1 + w.1 - rw.1),
        ];
        polygon(s, cv, &pts, k > 0);
        // The inscribed unit has its corners at the mid-sides.
        w = ((w.0 - rw.0) / 2.0, (w.1 - rw.1) / 2.0);
    }
}

/// Text drawing: `#` for dark (warp over), `.` for pale, top row first.
pub fn render_ascii(d: &Design) -> String {
    let mut out = String::new();
    for row in d.rows_top_down() {
        out.extend(row.chars().map(|c| if c == '1' { '#' } else { '.' }));
        out.push('\n');
    }
    out
}
