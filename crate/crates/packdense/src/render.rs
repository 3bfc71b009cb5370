//! Deterministic SVG output for packings.

use crate::packing::TorusPacking;
use std::collections::BTreeMap;
use std::fmt::Write;

const DEFAULT_PALETTE: [(&str, &str); 3] = [("L", "#f2c14e"), ("M", "#d1495b"), ("S", "#5386e4")];

fn fmt_len(x: f64) -> String {
    // fixed precision keeps byte-identical output for identical input
    format!("{x:.6}")
}

/// Renders `tiles x tiles` translated copies of the fundamental region,
/// each with its cell outline and label-colored circles.
pub fn render_svg(p: &TorusPacking, tiles: usize, palette: &BTreeMap<String, String>) -> String {
    assert!(tiles >= 1, "tiles must be at least 1");
    let red = p.reduced();
    let [[ux, uy], [vx, vy]] = red.basis;
    let rmax = red.disks.iter().map(|d| d.r).fold(0.0f64, f64::max);
    let corners: Vec<[f64; 2]> = (0..=tiles)
        .flat_map(|a| (0..=tiles).map(move |b| (a, b)))
        .map(|(a, b)| [a as f64 * ux + b as f64 * vx, a as f64 * uy + b as f64 * vy])
        .collect();
    let min_x = corners.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min) - rmax;
    let max_x = corners
        .iter()
        .map(|c| c[0])
        .fold(f64::NEG_INFINITY, f64::max)
        + rmax;
    let min_y = corners.iter().map(|c| c[1]).fold(f64::INFINITY, f64::min) - rmax;
    let max_y = corners
        .iter()
        .map(|c| c[1])
        .fold(f64::NEG_INFINITY, f64::max)
        + rmax;

    let color = |label: &str| -> String {
        if let Some(c) = palette.get(label) {
            return c.clone();
        }
        DEFAULT_PALETTE
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, c)| c.to_string())
            .unwrap_or_else(|| "#999999".into())
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_len(min_x),
        fmt_len(-max_y),
        fmt_len(max_x - min_x),
        fmt_len(max_y - min_y)
    );
    // y is flipped so the mathematical orientation matches the viewport
    let _ = writeln!(svg, "<g transform=\"scale(1,-1)\">");
    for a in 0..tiles {
        for b in 0..tiles {
            let t = [a as f64 * ux + b as f64 * vx, a as f64 * uy + b as f64 * vy];
            let _ = writeln!(
                svg,
                "<g transform=\"translate({},{})\">",
                fmt_len(t[0]),
                fmt_len(t[1])
            );
            let _ = writeln!(
                svg,
                "<path d=\"M 0 0 L {} {} L {} {} L {} {} Z\" fill=\"none\" stroke=\"#333333\" stroke-width=\"0.02\"/>",
                fmt_len(ux),
                fmt_len(uy),
                fmt_len(ux + vx),
                fmt_len(uy + vy),
                fmt_len(vx),
                fmt_len(vy)
            );
            for d in &red.disks {
                let _ = writeln!(
                    svg,
                    "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"#222222\" stroke-width=\"0.01\"/>",
                    d.label,
                    fmt_len(d.c[0]),
                    fmt_len(d.c[1]),
                    fmt_len(d.r),
                    color(&d.label)
                );
            }
            let _ = writeln!(svg, "</g>");
        }
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}
