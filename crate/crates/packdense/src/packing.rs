//! Explicit doubly periodic disc packings on a flat torus.
//!
//! A packing is a lattice basis plus a list of labeled discs per
//! fundamental region. Constructions are self-verifying: a builder returns
//! an error unless the assembled configuration passes the overlap check and
//! its measured density matches the family's closed form.

use crate::error::{Error, Result};
use crate::{f53, ft};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Absolute tolerance separating contacts from near-misses, with radii
/// normalized so the largest is 1. Constructions are accurate to ~1e-10.
pub const CONTACT_TOL: f64 = 1e-7;

/// Overlap slack in the packing invariant.
pub const OVERLAP_TOL: f64 = 1e-9;

/// One disc of a torus packing: Cartesian center, radius, size label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub c: [f64; 2],
    pub r: f64,
    pub label: String,
}

/// A doubly periodic packing: two lattice generators and the discs of one
/// fundamental region, centers in Cartesian coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusPacking {
    pub basis: [[f64; 2]; 2],
    pub disks: Vec<Disk>,
}

/// Overlap/density report for a packing.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// Largest pairwise interpenetration depth (0 when none).
    pub worst_overlap: f64,
    pub density: f64,
}

/// One tangency of the contact graph: discs `i` and `j`, with `j`
/// translated by `shift[0]*u + shift[1]*v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContactEdge {
    pub i: usize,
    pub j: usize,
    pub shift: [i32; 2],
}

/// Contact graph of a packing together with its face census on the torus.
#[derive(Debug, Clone, Serialize)]
pub struct ContactGraph {
    pub edges: Vec<ContactEdge>,
    /// True when every face of the torus map is a triangle.
    pub triangulated: bool,
    /// Face-size histogram (size -> count).
    pub face_sizes: BTreeMap<usize, usize>,
}

impl TorusPacking {
    pub fn new(basis: [[f64; 2]; 2], disks: Vec<Disk>) -> Result<Self> {
        let p = Self { basis, disks };
        if p.det().abs() < 1e-12 {
            return Err(Error::Domain("degenerate lattice basis".into()));
        }
        for d in &p.disks {
            if !(d.r > 0.0) || !d.c[0].is_finite() || !d.c[1].is_finite() {
                return Err(Error::Domain(format!("bad disk {d:?}")));
            }
        }
        Ok(p)
    }

    pub fn det(&self) -> f64 {
        let [[ux, uy], [vx, vy]] = self.basis;
        ux * vy - uy * vx
    }

    /// Cartesian lattice vector `a u + b v`.
    pub fn lattice_vector(&self, a: i32, b: i32) -> [f64; 2] {
        let [[ux, uy], [vx, vy]] = self.basis;
        [a as f64 * ux + b as f64 * vx, a as f64 * uy + b as f64 * vy]
    }

    /// Fractional coordinates of a Cartesian point.
    pub fn to_fractional(&self, c: [f64; 2]) -> [f64; 2] {
        let [[ux, uy], [vx, vy]] = self.basis;
        let det = self.det();
        [(c[0] * vy - c[1] * vx) / det, (c[1] * ux - c[0] * uy) / det]
    }

    pub fn from_fractional(&self, f: [f64; 2]) -> [f64; 2] {
        let [[ux, uy], [vx, vy]] = self.basis;
        [f[0] * ux + f[1] * vx, f[0] * uy + f[1] * vy]
    }

    /// Copy with every center translated into the fundamental cell.
    pub fn reduced(&self) -> TorusPacking {
        let mut p = self.clone();
        for d in &mut p.disks {
            let f = self.to_fractional(d.c);
            d.c = self.from_fractional([f[0].rem_euclid(1.0), f[1].rem_euclid(1.0)]);
        }
        p
    }

    /// Shortest representative of `a - b` modulo the lattice.
    pub fn min_image(&self, a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
        let f = self.to_fractional([a[0] - b[0], a[1] - b[1]]);
        let f = [f[0] - f[0].round(), f[1] - f[1].round()];
        let mut best = self.from_fractional(f);
        let mut best_n = best[0] * best[0] + best[1] * best[1];
        for da in -1..=1 {
            for db in -1..=1 {
                let c = self.from_fractional([f[0] + da as f64, f[1] + db as f64]);
                let n = c[0] * c[0] + c[1] * c[1];
                if n < best_n {
                    best = c;
                    best_n = n;
                }
            }
        }
        best
    }

    /// Total disc area over the cell area, plus the pairwise overlap scan
    /// across the 3x3 translate neighborhood.
    pub fn verify(&self) -> VerifyReport {
        let red = self.reduced();
        let density: f64 = red.disks.iter().map(|d| PI * d.r * d.r).sum::<f64>() / self.det().abs();
        let mut worst: f64 = 0.0;
        let n = red.disks.len();
        for i in 0..n {
            for j in 0..n {
                for a in -1..=1 {
                    for b in -1..=1 {
                        if i == j && a == 0 && b == 0 {
                            continue;
                        }
                        let t = red.lattice_vector(a, b);
                        let di = &red.disks[i];
                        let dj = &red.disks[j];
                        let dx = dj.c[0] + t[0] - di.c[0];
                        let dy = dj.c[1] + t[1] - di.c[1];
                        let dist = (dx * dx + dy * dy).sqrt();
                        let pen = di.r + dj.r - dist;
                        if pen > worst {
                            worst = pen;
                        }
                    }
                }
            }
        }
        VerifyReport {
            ok: worst <= OVERLAP_TOL,
            worst_overlap: worst,
            density,
        }
    }

    /// Tangency graph at the given tolerance, with the torus face census
    /// from the rotation system of the embedding.
    pub fn contact_graph(&self, tol: f64) -> ContactGraph {
        let red = self.reduced();
        let n = red.disks.len();
        // darts (i, j, a, b): disc i touching disc j translated by (a, b)
        let mut darts: Vec<(usize, usize, i32, i32)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for a in -1..=1 {
                    for b in -1..=1 {
                        if i == j && a == 0 && b == 0 {
                            continue;
                        }
                        let t = red.lattice_vector(a, b);
                        let di = &red.disks[i];
                        let dj = &red.disks[j];
                        let dx = dj.c[0] + t[0] - di.c[0];
                        let dy = dj.c[1] + t[1] - di.c[1];
                        let dist = (dx * dx + dy * dy).sqrt();
                        if (dist - di.r - dj.r).abs() <= tol {
                            darts.push((i, j, a, b));
                        }
                    }
                }
            }
        }
        let mut edges = Vec::new();
        for &(i, j, a, b) in &darts {
            if i < j || (i == j && (a, b) > (0, 0)) {
                edges.push(ContactEdge {
                    i,
                    j,
                    shift: [a, b],
                });
            }
        }
        // rotation system: outgoing darts sorted by angle at each vertex
        let mut outs: Vec<Vec<(usize, usize, i32, i32)>> = vec![Vec::new(); n];
        for &d in &darts {
            outs[d.0].push(d);
        }
        let angle = |d: &(usize, usize, i32, i32)| -> f64 {
            let t = red.lattice_vector(d.2, d.3);
            let ci = red.disks[d.0].c;
            let cj = red.disks[d.1].c;
            (cj[1] + t[1] - ci[1]).atan2(cj[0] + t[0] - ci[0])
        };
        for fan in &mut outs {
            fan.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
        }
        // faces are the orbits of (reverse dart, then next counterclockwise)
        let mut seen: std::collections::HashSet<(usize, usize, i32, i32)> =
            std::collections::HashSet::new();
        let mut face_sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for &d0 in &darts {
            if seen.contains(&d0) {
                continue;
            }
            let mut cur = d0;
            let mut len = 0usize;
            while seen.insert(cur) {
                len += 1;
                let rev = (cur.1, cur.0, -cur.2, -cur.3);
                let fan = &outs[cur.1];
                let k = fan.iter().position(|&x| x == rev).expect("reversal dart");
                cur = fan[(k + 1) % fan.len()];
            }
            *face_sizes.entry(len).or_insert(0) += 1;
        }
        let triangulated = !face_sizes.is_empty() && face_sizes.keys().all(|&s| s == 3);
        ContactGraph {
            edges,
            triangulated,
            face_sizes,
        }
    }

    /// Serializes to the packing JSON schema.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("packing serializes")
    }

    /// Parses the packing JSON schema; unknown keys are ignored.
    pub fn from_json(text: &str) -> Result<TorusPacking> {
        let p: TorusPacking = serde_json::from_str(text)?;
        TorusPacking::new(p.basis, p.disks)
    }
}

/// The one-size triangulated packing: one unit disc on the hexagonal torus.
pub fn build_hexagonal() -> TorusPacking {
    TorusPacking {
        basis: [[2.0, 0.0], [1.0, 3f64.sqrt()]],
        disks: vec![Disk {
            c: [0.0, 0.0],
            r: 1.0,
            label: "L".into(),
        }],
    }
}

/// Builds the perturbed two-disc packing at ratio `q`: two unit discs and
/// two `q`-discs per fundamental region on a centered rectangular lattice.
pub fn build_ft(q: f64) -> Result<TorusPacking> {
    let g = ft::ft_geometry(q)?;
    let root = (1.0 + 2.0 * q).sqrt();
    let cell_h = root + g.y;
    let basis = [[2.0 * g.x, 0.0], [g.x, cell_h]];
    let disks = vec![
        Disk {
            c: [0.0, root],
            r: 1.0,
            label: "L".into(),
        },
        Disk {
            c: [g.x, g.y],
            r: 1.0,
            label: "L".into(),
        },
        Disk {
            c: [q, 0.0],
            r: q,
            label: "S".into(),
        },
        Disk {
            c: [2.0 * g.x - q, 0.0],
            r: q,
            label: "S".into(),
        },
    ];
    let p = TorusPacking::new(basis, disks)?.reduced();
    accept(p, ft::ft_density_closed(q)?, 1e-10)
}

/// Builds the perturbed three-disc packing at ratio `q`: four discs of each
/// size per rectangular fundamental region.
pub fn build_f53(q: f64) -> Result<TorusPacking> {
    if !(q < 1.0) {
        return Err(Error::Domain(format!(
            "ratio {q} outside [q53, 1): the family is three-sized only below 1"
        )));
    }
    let p = f53::solve_p(q)?;
    let g_pq = f53::f53_geometry(1.0, p, q)?;
    let g_qp = f53::f53_geometry(1.0, q, p)?;
    if !g_pq.valid || !g_qp.valid {
        return Err(Error::Domain(format!(
            "configuration at q = {q} fails the non-overlap validity conditions"
        )));
    }
    let (x_pq, y_pq) = (g_pq.x, g_pq.y);
    let y_qp = g_qp.y;

    // angles of the tangency triangles and the open rhombus corner
    let th_y = tri_angle(1.0 + p, 1.0 + q, p + q);
    let th_p = tri_angle(1.0 + p, p + q, 1.0 + q);
    let th_pp = (p / (1.0 + p)).acos();
    let beta = (x_pq / y_pq).atan();

    // central rhombus: medium discs tangent at the origin, units across
    let y1 = [0.0, y_qp];
    let p1 = [p, 0.0];
    let phi0 = (-y_qp).atan2(p);
    let at = |base: [f64; 2], phi: f64, dist: f64| -> [f64; 2] {
        [base[0] + dist * phi.cos(), base[1] + dist * phi.sin()]
    };
    // fan around the top unit disc, counterclockwise from the medium disc;
    // the small disc at phi0 + th_y reappears as a lattice image of q2's
    // opposite, so only two small-disc positions are placed directly
    let yp = at(y1, phi0 + th_y + beta, 2.0 * y_pq);
    let q2 = at(y1, phi0 + th_y + 2.0 * beta, 1.0 + q);
    let p3 = at(y1, phi0 + 2.0 * th_y + 2.0 * beta, 1.0 + p);
    let q1c = at(y1, phi0 + 3.0 * th_y + 2.0 * beta, 1.0 + q);
    // second medium-contact rhombus reached through the next fan
    let ang_q2 = (q2[1] - p3[1]).atan2(q2[0] - p3[0]);
    let yb = at(p3, ang_q2 + th_p, 1.0 + p);
    let pp = at(p3, ang_q2 + th_p + th_pp, 2.0 * p);
    let ya = at(p3, ang_q2 + th_p + 2.0 * th_pp, 1.0 + p);

    // the lattice is spanned by twice the two rhombus centers; rotating the
    // first generator onto the x-axis makes the cell rectangular
    let u = [y1[0] + yp[0], y1[1] + yp[1]];
    let t2 = [p3[0] + pp[0], p3[1] + pp[1]];
    let v = [t2[0] - u[0], t2[1] - u[1]];
    let w = (u[0] * u[0] + u[1] * u[1]).sqrt();
    let h = (v[0] * v[0] + v[1] * v[1]).sqrt();
    let skew = (u[0] * v[0] + u[1] * v[1]) / (w * h);
    if skew.abs() > 1e-9 {
        return Err(Error::Consistency(format!(
            "assembled lattice is not rectangular (skew {skew})"
        )));
    }
    let (ct, st) = (u[0] / w, u[1] / w);
    let flip = if -st * v[0] + ct * v[1] > 0.0 {
        1.0
    } else {
        -1.0
    };
    let rot =
        |c: [f64; 2]| -> [f64; 2] { [ct * c[0] + st * c[1], flip * (-st * c[0] + ct * c[1])] };

    let neg = |c: [f64; 2]| [-c[0], -c[1]];
    let mut disks = Vec::with_capacity(12);
    for (c, r, label) in [
        (y1, 1.0, "L"),
        (neg(y1), 1.0, "L"),
        (yb, 1.0, "L"),
        (ya, 1.0, "L"),
        (p1, p, "M"),
        (neg(p1), p, "M"),
        (p3, p, "M"),
        (neg(p3), p, "M"),
        (q1c, q, "S"),
        (q2, q, "S"),
        (neg(q1c), q, "S"),
        (neg(q2), q, "S"),
    ] {
        disks.push(Disk {
            c: rot(c),
            r,
            label: label.into(),
        });
    }
    let packing = TorusPacking::new([[w, 0.0], [0.0, h]], disks)?.reduced();
    accept(packing, f53::f53_density_closed(q)?, 1e-9)
}

fn tri_angle(adj1: f64, adj2: f64, opp: f64) -> f64 {
    ((adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2)).acos()
}

fn accept(p: TorusPacking, expected_density: f64, tol: f64) -> Result<TorusPacking> {
    let rep = p.verify();
    if !rep.ok {
        return Err(Error::Consistency(format!(
            "constructed packing overlaps by {}",
            rep.worst_overlap
        )));
    }
    if (rep.density - expected_density).abs() > tol {
        return Err(Error::Consistency(format!(
            "measured density {} disagrees with closed form {}",
            rep.density, expected_density
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots;
    use crate::triangle::HEX_DENSITY;

    #[test]
    fn hexagonal_basics() {
        let p = build_hexagonal();
        let rep = p.verify();
        assert!(rep.ok);
        assert!((rep.density - HEX_DENSITY).abs() < 1e-12);
        let g = p.contact_graph(CONTACT_TOL);
        assert_eq!(g.edges.len(), 3);
        assert!(g.triangulated);
        assert_eq!(g.face_sizes.get(&3), Some(&2)); // V - E + F = 1 - 3 + 2 = 0
    }

    #[test]
    fn inflated_hexagonal_overlaps() {
        let mut p = build_hexagonal();
        p.disks[0].r = 1.01;
        let rep = p.verify();
        assert!(!rep.ok);
        assert!((rep.worst_overlap - 0.02).abs() < 1e-12);
    }

    #[test]
    fn ft_construction() {
        let q1 = roots::q1();
        let p = build_ft(q1).unwrap();
        assert_eq!(p.disks.len(), 4);
        let g = p.contact_graph(CONTACT_TOL);
        assert!(g.triangulated, "faces: {:?}", g.face_sizes);
        let p = build_ft(0.65).unwrap();
        assert!(p.verify().ok);
        let g = p.contact_graph(CONTACT_TOL);
        assert!(!g.triangulated);
        assert_eq!(g.face_sizes.get(&4), Some(&1));
        assert!(build_ft(0.5).is_err());
    }

    #[test]
    fn ft_at_q2_is_not_hexagonal() {
        let q2 = 0.6457072159165643;
        let p = build_ft(q2).unwrap();
        assert!((p.verify().density - HEX_DENSITY).abs() < 1e-8);
        assert_eq!(p.disks.len(), 4);
        let radii: std::collections::BTreeSet<u64> =
            p.disks.iter().map(|d| d.r.to_bits()).collect();
        assert_eq!(radii.len(), 2);
    }

    #[test]
    fn f53_construction() {
        let q53 = roots::q53();
        let p = build_f53(q53).unwrap();
        assert_eq!(p.disks.len(), 12);
        let g = p.contact_graph(CONTACT_TOL);
        assert!(g.triangulated, "faces: {:?}", g.face_sizes);
        let p = build_f53(0.655).unwrap();
        let g = p.contact_graph(CONTACT_TOL);
        assert!(!g.triangulated);
        assert_eq!(g.face_sizes.get(&4), Some(&2));
        assert_eq!(g.face_sizes.get(&3), Some(&20));
        assert!(build_f53(1.0).is_err());
        assert!(build_f53(0.6).is_err());
    }

    #[test]
    fn json_round_trip() {
        for p in [build_hexagonal(), build_ft(0.65).unwrap()] {
            let text = p.to_json();
            let back = TorusPacking::from_json(&text).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn json_errors_and_tolerance() {
        assert!(TorusPacking::from_json("{\"disks\": []}").is_err());
        let ok = TorusPacking::from_json(
            "{\"basis\": [[2,0],[1,1.7320508075688772]], \"disks\": [{\"c\":[0,0],\"r\":1.0,\"label\":\"L\",\"extra\":42}], \"unknown\": true}",
        );
        assert!(ok.is_ok());
    }
}
