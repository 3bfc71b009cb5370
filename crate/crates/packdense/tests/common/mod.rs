//! Shared test oracles, independent of the library's evaluation paths.

/// Exact area of the intersection of a disc with a triangle, by summing the
/// Green's-theorem contour integral over the clipped boundary: straight
/// chords contribute cross products, boundary arcs contribute circular
/// segments. Standard circle/polygon clipping; no library code involved.
pub fn circle_triangle_area(center: [f64; 2], r: f64, tri: [[f64; 2]; 3]) -> f64 {
    let verts: Vec<[f64; 2]> = tri
        .iter()
        .map(|v| [v[0] - center[0], v[1] - center[1]])
        .collect();
    let mut area = 0.0;
    for i in 0..3 {
        area += side_contribution(verts[i], verts[(i + 1) % 3], r);
    }
    area.abs()
}

// Contribution of one directed side to the clipped area: 0.5 * cross for
// parts of the side inside the circle, plus 0.5 * r^2 * dtheta for the arc
// spanning parts outside.
fn side_contribution(a: [f64; 2], b: [f64; 2], r: f64) -> f64 {
    let cross = |p: [f64; 2], q: [f64; 2]| 0.5 * (p[0] * q[1] - p[1] * q[0]);
    let arc = |p: [f64; 2], q: [f64; 2]| {
        let th1 = p[1].atan2(p[0]);
        let th2 = q[1].atan2(q[0]);
        let mut d = th2 - th1;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        0.5 * r * r * d
    };
    let inside = |p: [f64; 2]| p[0] * p[0] + p[1] * p[1] <= r * r;

    // intersection parameters of segment a + t (b - a) with the circle
    let d = [b[0] - a[0], b[1] - a[1]];
    let aa = d[0] * d[0] + d[1] * d[1];
    let bb = 2.0 * (a[0] * d[0] + a[1] * d[1]);
    let cc = a[0] * a[0] + a[1] * a[1] - r * r;
    let disc = bb * bb - 4.0 * aa * cc;
    let strictly_interior = |t: f64| t > 1e-14 && t < 1.0 - 1e-14;
    let mut ts: Vec<f64> = Vec::new();
    if disc > 0.0 {
        let sd = disc.sqrt();
        for t in [(-bb - sd) / (2.0 * aa), (-bb + sd) / (2.0 * aa)] {
            if strictly_interior(t) {
                ts.push(t);
            }
        }
    }
    let at = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];

    let mut points = vec![a];
    points.extend(ts.iter().map(|&t| at(t)));
    points.push(b);

    let mut total = 0.0;
    for w in points.windows(2) {
        let (p, q) = (w[0], w[1]);
        let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
        if inside(mid) {
            total += cross(p, q);
        } else {
            total += arc(p, q);
        }
    }
    total
}

/// Cartesian layout of the tangency triangle of three mutually tangent
/// discs: side lengths `r_i + r_j`, first vertex at the origin, second on
/// the positive x-axis.
pub fn tangency_triangle(r1: f64, r2: f64, r3: f64) -> [[f64; 2]; 3] {
    let c = r1 + r2;
    let b = r1 + r3;
    let a = r2 + r3;
    let x = (b * b + c * c - a * a) / (2.0 * c);
    let y = (b * b - x * x).sqrt();
    [[0.0, 0.0], [c, 0.0], [x, y]]
}

/// Incenter of a triangle given its vertices (side-length weighted mean).
pub fn incenter(tri: [[f64; 2]; 3]) -> [f64; 2] {
    let len = |p: [f64; 2], q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    let a = len(tri[1], tri[2]);
    let b = len(tri[0], tri[2]);
    let c = len(tri[0], tri[1]);
    let s = a + b + c;
    [
        (a * tri[0][0] + b * tri[1][0] + c * tri[2][0]) / s,
        (a * tri[0][1] + b * tri[1][1] + c * tri[2][1]) / s,
    ]
}
