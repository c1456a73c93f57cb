//! Static SVG drawing of a map and a set of agent paths.

use std::fmt::Write;

use crate::grid::{Cell, GridMap};

const CELL: usize = 16;
const PALETTE: [&str; 8] = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324"];

fn centre(c: Cell) -> (usize, usize) {
    (c.col * CELL + CELL / 2, c.row * CELL + CELL / 2)
}

/// SVG 1.1 document: obstacles in dark grey, one coloured polyline per
/// agent with one vertex per path cell, and a ring on each start.
pub fn render_svg(map: &GridMap, starts: &[Cell], paths: &[Vec<Cell>]) -> String {
    let (w, h) = (map.width() * CELL, map.height() * CELL);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    let _ = writeln!(svg, r##"<g fill="#333333">"##);
    for r in 0..map.height() {
        for c in 0..map.width() {
            if !map.is_free(Cell::new(r, c)) {
                let _ = writeln!(svg, r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}"/>"#, c * CELL, r * CELL);
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    for (k, path) in paths.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = path
            .iter()
            .map(|&c| {
                let (x, y) = centre(c);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="agent-{k}" points="{}" fill="none" stroke="{colour}" stroke-width="3" stroke-linejoin="round"/>"#,
            points.join(" ")
        );
    }
    for (k, &s) in starts.iter().enumerate() {
        let (x, y) = centre(s);
        let colour = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            svg,
            r#"<circle cx="{x}" cy="{y}" r="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
            CELL / 2 - 1
        );
    }
    svg.push_str("</svg>\n");
    svg
}
