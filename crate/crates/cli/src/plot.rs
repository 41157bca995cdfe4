//! SVG and CSV renderings of `(R1, R2)` polygons.

use std::fmt::Write;

use icregion::polytope::Region2D;
use icregion::rational::format_sig;

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const WIDTH: f64 = 560.0;
const HEIGHT: f64 = 520.0;
const MARGIN: f64 = 64.0;

pub const MAX_REGIONS: usize = 4;

fn label(x: f64) -> String {
    format_sig(x, 3)
}

/// Overlays up to four regions on shared axes spanning `[0, 1.1 * max]`.
pub fn svg(regions: &[(String, Region2D)]) -> String {
    let max = regions
        .iter()
        .flat_map(|(_, r)| r.vertices.iter().flat_map(|&(x, y)| [x, y]))
        .fold(0.0f64, f64::max);
    let span = if max > 0.0 { 1.1 * max } else { 1.0 };
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let px = |x: f64| MARGIN + x / span * pw;
    let py = |y: f64| HEIGHT - MARGIN - y / span * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0) = (px(0.0), py(0.0));
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, px(span));
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{}" stroke="black"/>"#, py(span));
    for k in 0..=5 {
        let v = span * k as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(v),
            y0 + 16.0,
            label(v)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, x0 - 6.0, py(v) + 4.0, label(v));
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">R1</text>"#, px(span / 2.0), HEIGHT - 16.0);
    let _ = writeln!(s, r#"<text x="16" y="{:.2}" text-anchor="middle">R2</text>"#, py(span / 2.0));

    for (k, (name, r)) in regions.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let points: Vec<String> = r.vertices.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="1.5"><title>{name}</title></polygon>"#,
            points.join(" ")
        );
        for &(x, y) in &r.vertices {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y));
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="{color}">({}, {})</text>"#,
                px(x) + 4.0,
                py(y) - 4.0 - 12.0 * k as f64,
                label(x),
                label(y)
            );
        }
        let ly = MARGIN / 2.0 + 14.0 * k as f64;
        let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{color}"/>"#, WIDTH - 150.0, ly - 9.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{ly:.2}">{name}</text>"#, WIDTH - 134.0);
    }
    s.push_str("</svg>\n");
    s
}

pub fn csv(regions: &[(String, Region2D)]) -> String {
    let mut s = String::from("region,vertex,R1,R2\n");
    for (name, r) in regions {
        for (i, &(x, y)) in r.vertices.iter().enumerate() {
            let _ = writeln!(s, "{name},{i},{},{}", format_sig(x, 12), format_sig(y, 12));
        }
    }
    s
}
