//! SVG output for chord diagrams and squaregraph layouts.

use std::f64::consts::PI;
use std::fmt::Write;

use squarekit::chords::ChordDiagram;
use squarekit::recognition::boundary_cycle;
use squarekit::{Graph, Result};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 180.0;

/// Three decimals, without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn on_circle(i: usize, n: usize) -> (f64, f64) {
    let a = 2.0 * PI * i as f64 / n as f64 - PI / 2.0;
    (SIZE / 2.0 + RADIUS * a.cos(), SIZE / 2.0 + RADIUS * a.sin())
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE as u32
    );
}

/// Unit circle with one straight line per chord.
pub fn diagram_svg(d: &ChordDiagram) -> String {
    let mut out = String::new();
    header(&mut out);
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        r#"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="black"/>"#,
        num(c),
        num(c),
        num(RADIUS)
    );
    let n = d.positions();
    for (chord, (p, q)) in d.endpoints().into_iter().enumerate() {
        let (x1, y1) = on_circle(p, n);
        let (x2, y2) = on_circle(q, n);
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"><title>{}</title></line>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            escape(d.label(chord))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Boundary cycle on a regular polygon, inner vertices at the fixpoint of
/// averaging their neighbors.
pub fn layout(g: &Graph) -> Result<Vec<(f64, f64)>> {
    let cyc = boundary_cycle(g)?;
    let mut pos = vec![(SIZE / 2.0, SIZE / 2.0); g.len()];
    let mut fixed = vec![false; g.len()];
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = on_circle(i, cyc.len());
        fixed[v] = true;
    }
    for _ in 0..100_000 {
        let mut change: f64 = 0.0;
        for v in (0..g.len()).filter(|&v| !fixed[v]) {
            let k = g.degree(v) as f64;
            let (sx, sy) = g.neighbors(v).iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let next = (sx / k, sy / k);
            change = change.max((next.0 - pos[v].0).abs()).max((next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if change < 1e-10 {
            break;
        }
    }
    Ok(pos)
}

fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let eps = 1e-9;
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < -eps && o3 * o4 < -eps
}

/// Boundary polygon under the drawn edges and vertices. A comment flags a
/// pair of crossing edges if the layout has one.
pub fn graph_svg(g: &Graph) -> Result<String> {
    let pos = layout(g)?;
    let cyc = boundary_cycle(g)?;
    let edges = g.edges();
    let mut crossing = None;
    'outer: for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a != c && a != d && b != c && b != d && segments_cross(pos[a], pos[b], pos[c], pos[d]) {
                crossing = Some((a, b, c, d));
                break 'outer;
            }
        }
    }
    let mut out = String::new();
    header(&mut out);
    if let Some((a, b, c, d)) = crossing {
        let name = |v: usize| escape(g.name(v)).replace("--", "- -");
        let _ = writeln!(
            out,
            "  <!-- warning: edges {}-{} and {}-{} cross in this layout -->",
            name(a),
            name(b),
            name(c),
            name(d)
        );
    }
    let points: Vec<String> = cyc.iter().map(|&v| format!("{},{}", num(pos[v].0), num(pos[v].1))).collect();
    let _ = writeln!(out, r#"  <polygon points="{}" fill="lavender" stroke="none"/>"#, points.join(" "));
    for &(u, v) in &edges {
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            num(pos[u].0),
            num(pos[u].1),
            num(pos[v].0),
            num(pos[v].1)
        );
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="3" fill="black"><title>{}</title></circle>"#,
            num(x),
            num(y),
            escape(g.name(v))
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
