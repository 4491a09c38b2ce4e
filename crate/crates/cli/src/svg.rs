//! SVG rendering of level drawings.
//!
//! Levels run bottom to top: a vertex at `(x, level)` is drawn at
//! `(unit·x, −unit·level)`. Output is byte-identical for identical input.

use std::fmt::Write as _;

use levdraw_core::{check_lambda_drawing, Drawing, Error, LevelGraph, Slopes};

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    /// Grid spacing in SVG user units.
    pub unit: u32,
    pub radius: f64,
    /// One horizontal line per level.
    pub grid: bool,
    pub labels: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            unit: 40,
            radius: 6.0,
            grid: false,
            labels: true,
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub fn render_svg(
    g: &LevelGraph,
    d: &Drawing,
    slopes: Slopes,
    style: &Style,
) -> Result<String, Error> {
    let report = check_lambda_drawing(g, d, slopes);
    if !report.ok() {
        return Err(Error::InvalidDrawing(report));
    }
    let unit = i64::from(style.unit.max(1));
    let pad = unit;
    let (min_x, max_x) = (d.min_x().unwrap_or(0), d.max_x().unwrap_or(0));
    let levels = i64::from(g.levels().max(1));
    let left = min_x * unit - pad;
    let top = -levels * unit - pad;
    let width = (max_x - min_x) * unit + 2 * pad;
    let height = (levels - 1) * unit + 2 * pad;
    let at = |v| (d.x(v) * unit, -i64::from(g.level(v)) * unit);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="{left} {top} {width} {height}">"#
    );
    if style.grid {
        let _ = writeln!(
            out,
            r##"<g class="levels" stroke="#cccccc" stroke-width="1">"##
        );
        for l in 1..=levels {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                min_x * unit - pad / 2,
                -l * unit,
                max_x * unit + pad / 2,
                -l * unit
            );
        }
        out.push_str("</g>\n");
    }
    let _ = writeln!(out, r#"<g class="edges" stroke="black" stroke-width="2">"#);
    for &(u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r#"<g class="vertices" fill="white" stroke="black" stroke-width="2">"#
    );
    for v in g.vertices() {
        let (cx, cy) = at(v);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx}" cy="{cy}" r="{}"><title>{}</title></circle>"#,
            style.radius,
            escape(g.name(v))
        );
    }
    out.push_str("</g>\n");
    if style.labels {
        let _ = writeln!(
            out,
            r#"<g class="labels" font-family="sans-serif" font-size="12">"#
        );
        for v in g.vertices() {
            let (cx, cy) = at(v);
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                cx as f64 + style.radius + 2.0,
                cy as f64 - style.radius - 2.0,
                escape(g.name(v))
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
