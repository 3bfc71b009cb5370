//! Curve sampling and CSV/SVG plot emission.

use crate::error::{Error, Result};
use crate::{f53, ft, roots, triangle};
use std::fmt::Write;

/// The curves this crate knows how to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveName {
    /// Density upper bound as a function of the radius ratio, on (0, 1].
    Florian,
    /// Perturbed two-disc family density, on [q1, 1].
    Ft,
    /// Perturbed three-disc family density, on [q53, 1].
    Delta53,
    /// Large-small-small over large-large-small density ratio, on (0, 1).
    Ratio,
    /// Intermediate-radius density `(r0, r, 1)` with `r0` the domain start.
    Intermediate,
}

impl std::str::FromStr for CurveName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "florian" => Ok(CurveName::Florian),
            "ft" => Ok(CurveName::Ft),
            "delta53" => Ok(CurveName::Delta53),
            "ratio" => Ok(CurveName::Ratio),
            "intermediate" => Ok(CurveName::Intermediate),
            other => Err(Error::Domain(format!("unknown curve {other:?}"))),
        }
    }
}

impl std::fmt::Display for CurveName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CurveName::Florian => "florian",
            CurveName::Ft => "ft",
            CurveName::Delta53 => "delta53",
            CurveName::Ratio => "ratio",
            CurveName::Intermediate => "intermediate",
        };
        f.write_str(s)
    }
}

impl CurveName {
    /// Maximal mathematical domain of the curve.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            CurveName::Florian => (f64::MIN_POSITIVE, 1.0),
            CurveName::Ft => (roots::q1(), 1.0),
            CurveName::Delta53 => (roots::q53(), 1.0),
            CurveName::Ratio => (f64::MIN_POSITIVE, 1.0 - 1e-12),
            CurveName::Intermediate => (f64::MIN_POSITIVE, 1.0),
        }
    }
}

/// A uniform sampling request for one named curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveSpec {
    pub name: CurveName,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
}

impl CurveSpec {
    pub fn new(name: CurveName, lo: f64, hi: f64, samples: usize) -> Result<Self> {
        if !(lo < hi) || samples < 2 {
            return Err(Error::Domain(format!(
                "need lo < hi and samples >= 2, got [{lo}, {hi}] x {samples}"
            )));
        }
        let (dlo, dhi) = name.domain();
        if lo < dlo - 1e-12 || hi > dhi + 1e-12 {
            return Err(Error::Domain(format!(
                "range [{lo}, {hi}] exceeds the domain [{dlo}, {dhi}] of curve {name}"
            )));
        }
        Ok(Self {
            name,
            lo,
            hi,
            samples,
        })
    }
}

/// Evaluates the named curve on a uniform grid.
pub fn sample_curve(spec: &CurveSpec) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(spec.samples);
    for k in 0..spec.samples {
        let q = spec.lo + (spec.hi - spec.lo) * k as f64 / (spec.samples - 1) as f64;
        let v = match spec.name {
            CurveName::Florian => triangle::florian_bound(q)?,
            CurveName::Ft => ft::ft_density_closed(q.min(1.0))?,
            CurveName::Delta53 => f53::f53_density_closed(q.min(1.0))?,
            CurveName::Ratio => triangle::ratio_lls_over_lss(q)?,
            CurveName::Intermediate => triangle::intermediate_density_curve(spec.lo, q)?,
        };
        out.push((q, v));
    }
    Ok(out)
}

/// Formats a value with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV with a `q,value` header.
pub fn emit_csv(points: &[(f64, f64)]) -> String {
    assert!(!points.is_empty(), "no points to emit");
    let mut out = String::from("q,value\n");
    for (q, v) in points {
        let _ = writeln!(out, "{},{}", sig12(*q), sig12(*v));
    }
    out
}

const STROKES: [&str; 5] = ["#c0392b", "#2e86c1", "#1e8449", "#8e44ad", "#d68910"];

/// SVG plot: axes with tick labels, one polyline per named curve, dashed
/// vertical markers at the supplied abscissae.
pub fn emit_plot_svg(curves: &[(String, Vec<(f64, f64)>)], markers: &[(String, f64)]) -> String {
    assert!(
        curves.iter().any(|(_, pts)| !pts.is_empty()),
        "no points to plot"
    );
    let (width, height, ml, mr, mt, mb) = (720.0, 480.0, 70.0, 20.0, 20.0, 50.0);
    let mut x0 = f64::INFINITY;
    let mut x1 = f64::NEG_INFINITY;
    let mut y0 = f64::INFINITY;
    let mut y1 = f64::NEG_INFINITY;
    for (_, pts) in curves {
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let pad = (y1 - y0).max(1e-9) * 0.05;
    y0 -= pad;
    y1 += pad;
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * (width - ml - mr);
    let sy = |y: f64| height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" font-family=\"monospace\" font-size=\"11\">"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>",
        width - ml - mr,
        height - mt - mb
    );
    for k in 0..=4 {
        let x = x0 + (x1 - x0) * k as f64 / 4.0;
        let y = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{:.4}</text>",
            sx(x),
            height - mb + 16.0,
            x
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.6}</text>",
            ml - 6.0,
            sy(y) + 4.0,
            y
        );
    }
    for (name, q) in markers {
        if *q < x0 || *q > x1 {
            continue;
        }
        let _ = writeln!(
            svg,
            "<line x1=\"{0:.2}\" y1=\"{1}\" x2=\"{0:.2}\" y2=\"{2}\" stroke=\"#777777\" stroke-dasharray=\"5,4\"/>",
            sx(*q),
            mt,
            height - mb
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            sx(*q),
            mt + 12.0,
            name
        );
    }
    for (idx, (name, pts)) in curves.iter().enumerate() {
        if pts.is_empty() {
            continue;
        }
        let stroke = STROKES[idx % STROKES.len()];
        let mut path = String::new();
        for (k, &(x, y)) in pts.iter().enumerate() {
            let _ = write!(
                path,
                "{}{:.2},{:.2}",
                if k == 0 { "" } else { " " },
                sx(x),
                sy(y)
            );
        }
        let _ = writeln!(
            svg,
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>"
        );
        let (lx, ly) = (pts[pts.len() - 1].0, pts[pts.len() - 1].1);
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{stroke}\">{name}</text>",
            sx(lx) - 40.0,
            sy(ly) - 6.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
