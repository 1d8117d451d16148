use std::fmt::Write;

use super::{CoefficientQuiver, FixedPoint, TorusGrading};
use crate::cyclic_rep::Vertex;

const DX: usize = 80;
const DY: usize = 40;
const MARGIN: usize = 40;
const R: usize = 8;

fn node_id(v: Vertex, row: usize) -> String {
    format!("v{}_{}", v.label(), row + 1)
}

/// Graphviz source: one column per vertex, rows top to bottom, marked points filled.
pub fn to_dot(cq: &CoefficientQuiver, grading: Option<&TorusGrading>, marked: Option<&FixedPoint>) -> String {
    let mut out = String::new();
    out.push_str("digraph coefficient_quiver {\n");
    out.push_str("  rankdir=LR;\n  node [shape=circle, fixedsize=true, width=0.35, fontsize=9];\n");
    for v in Vertex::all(cq.n()) {
        writeln!(out, "  subgraph cluster_{} {{\n    label=\"{}\";", v.label(), v.label()).unwrap();
        for row in 0..cq.point_count(v) {
            let label = match grading {
                Some(g) => g.weight_at(cq, v, row).to_string(),
                None => (row + 1).to_string(),
            };
            let fill = if marked.is_some_and(|fp| fp.is_marked_at(cq, v, row)) {
                ", style=filled, fillcolor=black, fontcolor=white"
            } else {
                ""
            };
            writeln!(out, "    {} [label=\"{}\"{}];", node_id(v, row), label, fill).unwrap();
        }
        for row in 1..cq.point_count(v) {
            writeln!(
                out,
                "    {} -> {} [style=invis];",
                node_id(v, row - 1),
                node_id(v, row)
            )
            .unwrap();
        }
        out.push_str("  }\n");
    }
    for v in Vertex::all(cq.n()) {
        for row in 0..cq.point_count(v) {
            if let Some(r2) = cq.succ_row(v, row) {
                let wrap = if v.succ().residue() == 0 { " [constraint=false]" } else { "" };
                writeln!(out, "  {} -> {}{};", node_id(v, row), node_id(v.succ(), r2), wrap).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

fn point_xy(v: Vertex, row: usize) -> (usize, usize) {
    (MARGIN + DX * v.residue(), MARGIN + DY * row)
}

/// Standalone SVG of the arranged quiver. Arrows back to the first vertex
/// are drawn as arcs returning along the bottom.
pub fn to_svg(cq: &CoefficientQuiver, grading: Option<&TorusGrading>, marked: Option<&FixedPoint>) -> String {
    let n = cq.n();
    let rows = Vertex::all(n).map(|v| cq.point_count(v)).max().unwrap_or(0);
    let width = 2 * MARGIN + DX * n.saturating_sub(1) + DX / 2;
    let height = 2 * MARGIN + DY * rows.saturating_sub(1) + 2 * DY;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    out.push_str(
        r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>"#,
    );
    out.push('\n');
    for v in Vertex::all(n) {
        let (x, _) = point_xy(v, 0);
        writeln!(
            out,
            r#"<text x="{x}" y="{}" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN / 2,
            v.label()
        )
        .unwrap();
    }
    for v in Vertex::all(n) {
        for row in 0..cq.point_count(v) {
            let Some(r2) = cq.succ_row(v, row) else {
                continue;
            };
            let (x1, y1) = point_xy(v, row);
            let (x2, y2) = point_xy(v.succ(), r2);
            if x2 > x1 {
                writeln!(
                    out,
                    r#"<line x1="{}" y1="{y1}" x2="{}" y2="{y2}" stroke="black" marker-end="url(#head)"/>"#,
                    x1 + R,
                    x2 - R
                )
                .unwrap();
            } else {
                let low = y1.max(y2) + DY;
                let right = x1 + DX / 2;
                writeln!(
                    out,
                    r#"<path d="M{},{y1} C{right},{y1} {right},{low} {},{low} S{},{y2} {},{}" fill="none" stroke="gray" marker-end="url(#head)"/>"#,
                    x1 + R,
                    (x1 + x2) / 2,
                    x2.saturating_sub(DX / 2),
                    x2,
                    y2 + R
                )
                .unwrap();
            }
        }
    }
    for v in Vertex::all(n) {
        for row in 0..cq.point_count(v) {
            let (x, y) = point_xy(v, row);
            let filled = marked.is_some_and(|fp| fp.is_marked_at(cq, v, row));
            let (fill, text) = if filled { ("black", "white") } else { ("white", "black") };
            writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{R}" fill="{fill}" stroke="black"/>"#).unwrap();
            if let Some(g) = grading {
                writeln!(
                    out,
                    r#"<text x="{x}" y="{}" text-anchor="middle" font-size="8" fill="{text}">{}</text>"#,
                    y + 3,
                    g.weight_at(cq, v, row)
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
