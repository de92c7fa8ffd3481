//! Renderers: a character-grid view of an embedding and a standalone
//! SVG drawing.

use std::fmt::Write as _;

use crate::embedding::Embedding;
use crate::graph::SourceGraph;
use crate::grid::{GridCoord, GridDims};

/// Largest grid side the ASCII view renders comfortably; callers should
/// warn beyond it.
pub const ASCII_BUDGET: usize = 40;

pub fn exceeds_ascii_budget(dims: GridDims) -> bool {
    dims.rows() > ASCII_BUDGET || dims.cols() > ASCII_BUDGET
}

/// Single-character symbol for a braid ordinal: 1-9, then a-z, then '?'
/// for ordinals past 35 (the legend spells those out).
pub fn ascii_symbol(ordinal: usize) -> char {
    match ordinal {
        1..=9 => (b'0' + ordinal as u8) as char,
        10..=35 => (b'a' + (ordinal - 10) as u8) as char,
        _ => '?',
    }
}

/// Draws the embedding as one character per grid cell: each occupied
/// cell shows its island's ordinal symbol, empty cells show '.'. Row 1
/// of a braid layout therefore reads ascending. Appends a legend when
/// any ordinal falls outside the symbol alphabet. No trailing newline.
pub fn render_ascii(embedding: &Embedding, graph: &SourceGraph) -> String {
    let dims = embedding.dims();
    let mut rows = vec![vec!['.'; dims.cols()]; dims.rows()];
    for island in embedding.islands() {
        let symbol = graph.ordinal_of(island.vertex).map_or('?', ascii_symbol);
        for &cell in &island.cells {
            if dims.contains(cell) {
                rows[cell.row - 1][cell.col - 1] = symbol;
            }
        }
    }
    let mut lines: Vec<String> = rows
        .into_iter()
        .map(|row| row.into_iter().collect())
        .collect();
    let hidden: Vec<(usize, &str)> = graph
        .ordering()
        .iter()
        .enumerate()
        .filter(|&(k0, _)| k0 + 1 > 35)
        .map(|(k0, &v)| (k0 + 1, graph.label_of(v).unwrap_or("?")))
        .collect();
    if !hidden.is_empty() {
        lines.push("legend:".to_string());
        for (ordinal, label) in hidden {
            lines.push(format!("  {ordinal} = {label}"));
        }
    }
    lines.join("\n")
}

const MARGIN: i64 = 48;
const SPACING: i64 = 48;
const CELL_RADIUS: i64 = 9;

const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
    "#469990", "#800000", "#808000", "#000075",
];

fn pixel(cell: GridCoord) -> (i64, i64) {
    (
        MARGIN + (cell.col as i64 - 1) * SPACING,
        MARGIN + (cell.row as i64 - 1) * SPACING,
    )
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn class_token(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Draws the embedding as a standalone SVG: one group per island
/// (circles for cells, solid lines for chain edges, coloured by
/// ordinal), then one dashed line per bridge. Byte output is
/// deterministic for identical input.
pub fn render_svg(embedding: &Embedding, graph: &SourceGraph) -> String {
    let dims = embedding.dims();
    let width = 2 * MARGIN + (dims.cols() as i64 - 1) * SPACING;
    let height = 2 * MARGIN + (dims.rows() as i64 - 1) * SPACING;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .expect("string write");
    writeln!(svg, r##"  <rect width="{width}" height="{height}" fill="#ffffff"/>"##)
        .expect("string write");
    for island in embedding.islands() {
        let color = graph
            .ordinal_of(island.vertex)
            .map_or("#888888", |k| PALETTE[(k - 1) % PALETTE.len()]);
        let label = graph.label_of(island.vertex).unwrap_or("?");
        writeln!(
            svg,
            r#"  <g class="island-{}" fill="{color}" stroke="{color}">"#,
            class_token(label)
        )
        .expect("string write");
        writeln!(svg, "    <title>{}</title>", xml_escape(label)).expect("string write");
        for &(a, b) in &island.chain_edges {
            let (x1, y1) = pixel(a);
            let (x2, y2) = pixel(b);
            writeln!(
                svg,
                r#"    <line class="chain" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke-width="3"/>"#
            )
            .expect("string write");
        }
        for &cell in &island.cells {
            let (cx, cy) = pixel(cell);
            writeln!(
                svg,
                r#"    <circle class="cell" cx="{cx}" cy="{cy}" r="{CELL_RADIUS}"/>"#
            )
            .expect("string write");
        }
        writeln!(svg, "  </g>").expect("string write");
    }
    writeln!(
        svg,
        r##"  <g class="bridges" stroke="#222222" stroke-width="4" stroke-dasharray="7 4" fill="none">"##
    )
    .expect("string write");
    for bridge in embedding.bridges() {
        let (cu, cv) = bridge.endpoints();
        let (x1, y1) = pixel(cu);
        let (x2, y2) = pixel(cv);
        writeln!(
            svg,
            r#"    <line class="bridge" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        )
        .expect("string write");
    }
    writeln!(svg, "  </g>").expect("string write");
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{embed, prune};

    #[test]
    fn symbols_walk_the_alphabet() {
        assert_eq!(ascii_symbol(1), '1');
        assert_eq!(ascii_symbol(9), '9');
        assert_eq!(ascii_symbol(10), 'a');
        assert_eq!(ascii_symbol(35), 'z');
        assert_eq!(ascii_symbol(36), '?');
        assert_eq!(ascii_symbol(99), '?');
    }

    #[test]
    fn tiny_graphs_render_flat() {
        let k1 = SourceGraph::new(vec!["solo".into()], &[]).unwrap();
        assert_eq!(render_ascii(&embed(&k1), &k1), "1");
        let k2 = SourceGraph::complete(2).unwrap();
        assert_eq!(render_ascii(&embed(&k2), &k2), "12");
    }

    #[test]
    fn six_clique_renders_the_braid() {
        let g = SourceGraph::complete(6).unwrap();
        let want = ["123456", "214365", "241635", "426153", "462513"].join("\n");
        assert_eq!(render_ascii(&embed(&g), &g), want);
    }

    #[test]
    fn pruned_cells_render_as_dots() {
        let g =
            SourceGraph::new(vec!["a".into(), "b".into(), "c".into()], &[(1, 2), (2, 3)]).unwrap();
        let e = embed(&g);
        assert_eq!(render_ascii(&e, &g), "123\n213");
        let pruned = prune(&e, &g).unwrap();
        assert_eq!(render_ascii(&pruned, &g), "123\n...");
    }

    #[test]
    fn legend_appears_past_the_alphabet() {
        let g35 = SourceGraph::complete(35).unwrap();
        assert!(!render_ascii(&embed(&g35), &g35).contains("legend:"));
        let g40 = SourceGraph::complete(40).unwrap();
        let out = render_ascii(&embed(&g40), &g40);
        assert!(out.contains("legend:"));
        assert!(out.contains("  36 = 36"));
        assert!(out.contains("  40 = 40"));
        assert!(!out.contains("  35 = 35"));
    }

    #[test]
    fn ascii_budget_trips_on_either_side() {
        assert!(!exceeds_ascii_budget(GridDims::new(39, 40).unwrap()));
        assert!(exceeds_ascii_budget(GridDims::new(40, 41).unwrap()));
        assert!(exceeds_ascii_budget(GridDims::new(41, 40).unwrap()));
    }

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn svg_element_counts_match_stats() {
        let g = SourceGraph::complete(6).unwrap();
        let e = embed(&g);
        let svg = render_svg(&e, &g);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(count(&svg, "<circle "), 30);
        assert_eq!(count(&svg, r#"class="chain""#), 24);
        assert_eq!(count(&svg, r#"class="bridge""#), 15);
        assert_eq!(count(&svg, r#"class="island-"#), 6);
        assert_eq!(svg, render_svg(&e, &g));
    }

    #[test]
    fn svg_for_an_edge_is_two_dots_and_a_dash() {
        let g = SourceGraph::complete(2).unwrap();
        let svg = render_svg(&embed(&g), &g);
        assert_eq!(count(&svg, "<circle "), 2);
        assert_eq!(count(&svg, r#"class="chain""#), 0);
        assert_eq!(count(&svg, r#"class="bridge""#), 1);
    }

    #[test]
    fn svg_escapes_and_sanitizes_labels() {
        let g = SourceGraph::new(vec!["a<b&\"c".into()], &[]).unwrap();
        let svg = render_svg(&embed(&g), &g);
        assert!(svg.contains(r#"class="island-a_b__c""#));
        assert!(svg.contains("<title>a&lt;b&amp;&quot;c</title>"));
    }
}
