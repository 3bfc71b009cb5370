//! Wallpaper-group classification of a torus packing.
//!
//! Isometries are detected as pairs `(R, t)` acting on the labeled disc
//! multiset modulo the lattice. Candidate rotations come from the finitely
//! many maps sending one disc center onto another (the rotation center is
//! determined by the pair and the angle); candidate reflection/glide axes
//! run along lattice-commensurate directions through disc-pair matches.
//!
//! On the torus a reflection and the glides sharing its axis direction can
//! coincide as quotient maps, so the mirror/glide distinction is made by
//! fixed lines: an orientation-reversing op with a fixed line is a mirror,
//! one without is an essential glide.

use crate::error::{Error, Result};
use crate::packing::TorusPacking;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Matching tolerance in units of the maximum radius, consistent with the
/// contact tolerance of the packing model.
pub const MATCH_TOL: f64 = 1e-7;

/// The 17 plane symmetry groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum WallpaperGroup {
    p1,
    p2,
    pm,
    pg,
    cm,
    pmm,
    pmg,
    pgg,
    cmm,
    p4,
    p4m,
    p4g,
    p3,
    p3m1,
    p31m,
    p6,
    p6m,
}

impl std::fmt::Display for WallpaperGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Geometric classification of one detected isometry.
#[derive(Debug, Clone, Serialize)]
pub enum IsometryKind {
    /// The identity / a pure lattice translation.
    Translation { vector: [f64; 2] },
    /// Rotation with its fixed points on the torus (up to four).
    Rotation { order: u32, centers: Vec<[f64; 2]> },
    /// Reflection with at least one fixed axis line.
    Reflection {
        axis_point: [f64; 2],
        axis_dir: [f64; 2],
    },
    /// Orientation-reversing op without fixed points: an essential glide.
    Glide {
        axis_point: [f64; 2],
        axis_dir: [f64; 2],
        shift: f64,
    },
}

/// A detected symmetry `x -> R x + t` of the packing, taken modulo the
/// lattice, together with its geometric classification.
#[derive(Debug, Clone, Serialize)]
pub struct Isometry {
    pub linear: [[f64; 2]; 2],
    pub translation: [f64; 2],
    pub kind: IsometryKind,
}

fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat_vec(a: [[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

fn rot_mat(phi: f64) -> [[f64; 2]; 2] {
    [[phi.cos(), -phi.sin()], [phi.sin(), phi.cos()]]
}

fn refl_mat(theta: f64) -> [[f64; 2]; 2] {
    // reflection across a line of direction angle theta
    let (c, s) = ((2.0 * theta).cos(), (2.0 * theta).sin());
    [[c, s], [s, -c]]
}

fn solve2(a: [[f64; 2]; 2], rhs: [f64; 2]) -> Option<[f64; 2]> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.abs() < 1e-12 {
        return None;
    }
    Some([
        (rhs[0] * a[1][1] - rhs[1] * a[0][1]) / det,
        (rhs[1] * a[0][0] - rhs[0] * a[1][0]) / det,
    ])
}

// Lagrange-reduced lattice basis: shortest vector first, second vector
// nearly orthogonal. Axis directions with small coefficients are only
// complete relative to a reduced basis.
fn gauss_reduce(mut u: [f64; 2], mut v: [f64; 2]) -> ([f64; 2], [f64; 2]) {
    let norm2 = |w: [f64; 2]| w[0] * w[0] + w[1] * w[1];
    for _ in 0..64 {
        if norm2(u) > norm2(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let mu = ((v[0] * u[0] + v[1] * u[1]) / norm2(u)).round();
        if mu == 0.0 {
            break;
        }
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
    }
    (u, v)
}

struct Detector<'a> {
    p: &'a TorusPacking,
    tol: f64,
}

impl<'a> Detector<'a> {
    fn new(p: &'a TorusPacking) -> Self {
        let rmax = p.disks.iter().map(|d| d.r).fold(0.0f64, f64::max);
        Detector {
            p,
            tol: MATCH_TOL * rmax.max(1.0),
        }
    }

    fn same_point(&self, a: [f64; 2], b: [f64; 2]) -> bool {
        let m = self.p.min_image(a, b);
        (m[0] * m[0] + m[1] * m[1]).sqrt() < self.tol
    }

    fn preserves_lattice(&self, r: [[f64; 2]; 2]) -> bool {
        let [[ux, uy], [vx, vy]] = self.p.basis;
        for col in [[ux, uy], [vx, vy]] {
            let img = mat_vec(r, col);
            let f = self.p.to_fractional(img);
            if (f[0] - f[0].round()).abs() > 1e-7 || (f[1] - f[1].round()).abs() > 1e-7 {
                return false;
            }
        }
        true
    }

    fn is_symmetry(&self, r: [[f64; 2]; 2], t: [f64; 2]) -> bool {
        if !self.preserves_lattice(r) {
            return false;
        }
        self.p.disks.iter().all(|d| {
            let img = mat_vec(r, d.c);
            let img = [img[0] + t[0], img[1] + t[1]];
            self.p.disks.iter().any(|e| {
                (d.r - e.r).abs() < 1e-9 && d.label == e.label && self.same_point(img, e.c)
            })
        })
    }

    fn canon_translation(&self, t: [f64; 2]) -> ([f64; 2], [i64; 2]) {
        let f = self.p.to_fractional(t);
        let mut f = [f[0].rem_euclid(1.0), f[1].rem_euclid(1.0)];
        for v in &mut f {
            if *v > 1.0 - 1e-6 {
                *v = 0.0;
            }
        }
        let key = [(f[0] * 1e5).round() as i64, (f[1] * 1e5).round() as i64];
        (self.p.from_fractional(f), key)
    }
}

type OpTable = HashMap<([i64; 4], [i64; 2]), ([[f64; 2]; 2], [f64; 2])>;

/// Quotients the packing by all detected pure translations, returning the
/// packing on its primitive cell plus the index of the stored cell.
///
/// A wallpaper group is a plane-pattern notion: rotations of the pattern
/// need not descend to a non-primitive torus (a sublattice can lose the
/// rotational symmetry of the pattern), so classification always starts
/// from the primitive cell.
pub fn primitive_form(p: &TorusPacking) -> Result<(TorusPacking, usize)> {
    let red = p.reduced();
    let det = Detector::new(&red);
    let n = red.disks.len();
    let eye = [[1.0, 0.0], [0.0, 1.0]];
    let mut classes: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    for i in 0..n {
        for j in 0..n {
            if (red.disks[i].r - red.disks[j].r).abs() > 1e-9
                || red.disks[i].label != red.disks[j].label
            {
                continue;
            }
            for a in -1..=1 {
                for b in -1..=1 {
                    let tv = red.lattice_vector(a, b);
                    let t = [
                        red.disks[j].c[0] + tv[0] - red.disks[i].c[0],
                        red.disks[j].c[1] + tv[1] - red.disks[i].c[1],
                    ];
                    let (tc, _) = det.canon_translation(t);
                    if classes.iter().any(|c| det.same_point(*c, tc)) {
                        continue;
                    }
                    if det.is_symmetry(eye, tc) {
                        classes.push(tc);
                    }
                }
            }
        }
    }
    let m = classes.len();
    if m == 1 {
        return Ok((red, 1));
    }
    // primitive basis: a pair spanning the enlarged translation group
    let area = red.det().abs() / m as f64;
    let mut cands: Vec<[f64; 2]> = Vec::new();
    for t in &classes {
        for a in -1..=1 {
            for b in -1..=1 {
                let lv = red.lattice_vector(a, b);
                let v = [t[0] + lv[0], t[1] + lv[1]];
                if v[0] * v[0] + v[1] * v[1] > 1e-12 {
                    cands.push(v);
                }
            }
        }
    }
    let int_coords = |x: [f64; 2], y: [f64; 2], t: [f64; 2]| -> bool {
        let d = x[0] * y[1] - x[1] * y[0];
        let alpha = (t[0] * y[1] - t[1] * y[0]) / d;
        let beta = (t[1] * x[0] - t[0] * x[1]) / d;
        (alpha - alpha.round()).abs() < 1e-6 && (beta - beta.round()).abs() < 1e-6
    };
    for x in &cands {
        for y in &cands {
            let d = x[0] * y[1] - x[1] * y[0];
            if (d.abs() - area).abs() > 1e-6 * area.max(1.0) {
                continue;
            }
            let u = red.lattice_vector(1, 0);
            let v = red.lattice_vector(0, 1);
            if !(int_coords(*x, *y, u) && int_coords(*x, *y, v))
                || !classes.iter().all(|t| int_coords(*x, *y, *t))
            {
                continue;
            }
            let (bx, by) = gauss_reduce(*x, *y);
            let prim_basis = [bx, by];
            let probe = TorusPacking::new(prim_basis, red.disks.clone())?;
            let mut disks: Vec<crate::packing::Disk> = Vec::new();
            for dsk in &red.disks {
                let dup = disks.iter().any(|e: &crate::packing::Disk| {
                    let mi = probe.min_image(dsk.c, e.c);
                    (dsk.r - e.r).abs() < 1e-9
                        && dsk.label == e.label
                        && (mi[0] * mi[0] + mi[1] * mi[1]).sqrt() < det.tol
                });
                if !dup {
                    disks.push(dsk.clone());
                }
            }
            if disks.len() * m != n {
                continue;
            }
            return Ok((TorusPacking::new(prim_basis, disks)?.reduced(), m));
        }
    }
    Err(Error::InconsistentSymmetries(
        "translations found but no primitive basis spans them".into(),
    ))
}

/// All isometries of the packing modulo its lattice, identity included.
pub fn find_symmetries(p: &TorusPacking) -> Vec<Isometry> {
    let red = p.reduced();
    let det = Detector::new(&red);
    let n = red.disks.len();
    let mut found: OpTable = HashMap::new();
    let mut seen: std::collections::HashSet<([i64; 4], [i64; 2])> =
        std::collections::HashSet::new();
    let mut add = |r: [[f64; 2]; 2], t: [f64; 2]| {
        let (tc, tkey) = det.canon_translation(t);
        let rkey = [
            (r[0][0] * 1e6).round() as i64,
            (r[0][1] * 1e6).round() as i64,
            (r[1][0] * 1e6).round() as i64,
            (r[1][1] * 1e6).round() as i64,
        ];
        let key = (rkey, tkey);
        if !seen.insert(key) {
            return;
        }
        if det.is_symmetry(r, tc) {
            found.insert(key, (r, tc));
        }
    };

    add([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0]);

    // candidate targets range over a 5x5 translate block; the later
    // multiset check is exact mod the lattice either way
    let translates: Vec<[f64; 2]> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| (a, b)))
        .map(|(a, b)| red.lattice_vector(a, b))
        .collect();

    // pure translations beyond the identity occur when the stored cell is
    // a multiple of the true period; they feed the orbifold ratio
    let eye = [[1.0, 0.0], [0.0, 1.0]];
    for i in 0..n {
        for j in 0..n {
            if (red.disks[i].r - red.disks[j].r).abs() > 1e-9
                || red.disks[i].label != red.disks[j].label
            {
                continue;
            }
            for tv in &translates {
                add(
                    eye,
                    [
                        red.disks[j].c[0] + tv[0] - red.disks[i].c[0],
                        red.disks[j].c[1] + tv[1] - red.disks[i].c[1],
                    ],
                );
            }
        }
    }

    // rotations: the center sending disc i onto disc j (+ translate) is
    // determined by the pair and the turning angle
    for (order, phi) in [
        (2u32, PI),
        (3, 2.0 * PI / 3.0),
        (4, PI / 2.0),
        (6, PI / 3.0),
    ] {
        for sgn in if order == 2 {
            vec![1.0]
        } else {
            vec![1.0, -1.0]
        } {
            let r = rot_mat(sgn * phi);
            let a = [[1.0 - r[0][0], -r[0][1]], [-r[1][0], 1.0 - r[1][1]]];
            for i in 0..n {
                for j in 0..n {
                    if (red.disks[i].r - red.disks[j].r).abs() > 1e-9
                        || red.disks[i].label != red.disks[j].label
                    {
                        continue;
                    }
                    for tv in &translates {
                        let target = [red.disks[j].c[0] + tv[0], red.disks[j].c[1] + tv[1]];
                        let rci = mat_vec(r, red.disks[i].c);
                        let Some(z) = solve2(a, [target[0] - rci[0], target[1] - rci[1]]) else {
                            continue;
                        };
                        let rz = mat_vec(r, z);
                        add(r, [z[0] - rz[0], z[1] - rz[1]]);
                    }
                }
            }
        }
    }

    // reflections/glides along lattice-commensurate directions, enumerated
    // in a reduced basis so small coefficients cover every wallpaper axis
    let (ru, rv) = gauss_reduce(red.lattice_vector(1, 0), red.lattice_vector(0, 1));
    let mut dirs: Vec<f64> = Vec::new();
    for a in -2i32..=2 {
        for b in -2i32..=2 {
            if a == 0 && b == 0 {
                continue;
            }
            let d = [
                a as f64 * ru[0] + b as f64 * rv[0],
                a as f64 * ru[1] + b as f64 * rv[1],
            ];
            let th = d[1].atan2(d[0]).rem_euclid(PI);
            if !dirs
                .iter()
                .any(|&x| (x - th).abs() < 1e-9 || (x - th).abs() > PI - 1e-9)
            {
                dirs.push(th);
            }
        }
    }
    for th in dirs {
        let r = refl_mat(th);
        for i in 0..n {
            for j in 0..n {
                if (red.disks[i].r - red.disks[j].r).abs() > 1e-9
                    || red.disks[i].label != red.disks[j].label
                {
                    continue;
                }
                for tv in &translates {
                    let rci = mat_vec(r, red.disks[i].c);
                    add(
                        r,
                        [
                            red.disks[j].c[0] + tv[0] - rci[0],
                            red.disks[j].c[1] + tv[1] - rci[1],
                        ],
                    );
                }
            }
        }
    }

    let mut ops: Vec<Isometry> = found
        .into_values()
        .map(|(r, t)| Isometry {
            linear: r,
            translation: t,
            kind: classify_op(&red, r, t),
        })
        .collect();
    ops.sort_by(|a, b| {
        let ka = (
            a.linear[0][0],
            a.linear[0][1],
            a.translation[0],
            a.translation[1],
        );
        let kb = (
            b.linear[0][0],
            b.linear[0][1],
            b.translation[0],
            b.translation[1],
        );
        ka.partial_cmp(&kb).unwrap()
    });
    ops
}

fn classify_op(p: &TorusPacking, r: [[f64; 2]; 2], t: [f64; 2]) -> IsometryKind {
    let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    if det > 0.0 {
        let phi = r[1][0].atan2(r[0][0]);
        if phi.abs() < 1e-9 {
            return IsometryKind::Translation { vector: t };
        }
        let order = (2.0 * PI / phi.abs()).round() as u32;
        let a = [[1.0 - r[0][0], -r[0][1]], [-r[1][0], 1.0 - r[1][1]]];
        let mut centers: Vec<[f64; 2]> = Vec::new();
        for la in -2i32..=2 {
            for lb in -2i32..=2 {
                let lv = p.lattice_vector(la, lb);
                if let Some(z) = solve2(a, [t[0] + lv[0], t[1] + lv[1]]) {
                    let f = p.to_fractional(z);
                    let mut f = [f[0].rem_euclid(1.0), f[1].rem_euclid(1.0)];
                    for v in &mut f {
                        if *v > 1.0 - 1e-6 {
                            *v = 0.0;
                        }
                    }
                    let zc = p.from_fractional(f);
                    if !centers.iter().any(|c| {
                        let m = p.min_image(*c, zc);
                        (m[0] * m[0] + m[1] * m[1]).sqrt() < 1e-6
                    }) {
                        centers.push(zc);
                    }
                }
            }
        }
        centers.sort_by(|a, b| (a[0], a[1]).partial_cmp(&(b[0], b[1])).unwrap());
        return IsometryKind::Rotation { order, centers };
    }
    // orientation-reversing: direction of the fixed eigenvector
    let theta = 0.5 * r[1][0].atan2(r[0][0]);
    let dv = snap_unit([theta.cos(), theta.sin()]);
    let nv = [-dv[1], dv[0]];
    // a lattice-adjusted representative with zero parallel shift fixes a line
    for la in -6i32..=6 {
        for lb in -6i32..=6 {
            let lv = p.lattice_vector(la, lb);
            let tt = [t[0] + lv[0], t[1] + lv[1]];
            let shift = tt[0] * dv[0] + tt[1] * dv[1];
            if shift.abs() < 1e-6 {
                let off = (tt[0] * nv[0] + tt[1] * nv[1]) / 2.0;
                return IsometryKind::Reflection {
                    axis_point: reduce_point(p, [off * nv[0], off * nv[1]]),
                    axis_dir: dv,
                };
            }
        }
    }
    let shift = t[0] * dv[0] + t[1] * dv[1];
    let off = (t[0] * nv[0] + t[1] * nv[1]) / 2.0;
    IsometryKind::Glide {
        axis_point: reduce_point(p, [off * nv[0], off * nv[1]]),
        axis_dir: dv,
        shift,
    }
}

// cosmetics for reported geometry: kill sign/rounding noise in directions
fn snap_unit(v: [f64; 2]) -> [f64; 2] {
    let snap = |x: f64| {
        if x.abs() < 1e-9 {
            0.0
        } else if (x.abs() - 1.0).abs() < 1e-9 {
            x.signum()
        } else {
            x
        }
    };
    [snap(v[0]), snap(v[1])]
}

// any lattice translate of a point on an axis line still lies on an axis
// line of the same torus op; report the in-cell representative
fn reduce_point(p: &TorusPacking, z: [f64; 2]) -> [f64; 2] {
    let f = p.to_fractional(z);
    let mut f = [f[0].rem_euclid(1.0), f[1].rem_euclid(1.0)];
    for v in &mut f {
        if *v > 1.0 - 1e-9 {
            *v = 0.0;
        }
    }
    let c = p.from_fractional(f);
    [
        if c[0].abs() < 1e-9 { 0.0 } else { c[0] },
        if c[1].abs() < 1e-9 { 0.0 } else { c[1] },
    ]
}

/// Checks that composing any two detected isometries lands back in the set
/// (modulo the lattice).
pub fn closure_holds(p: &TorusPacking, ops: &[Isometry]) -> bool {
    let red = p.reduced();
    let det = Detector::new(&red);
    for a in ops {
        for b in ops {
            let r = mat_mul(a.linear, b.linear);
            let t_b = mat_vec(a.linear, b.translation);
            let t = [t_b[0] + a.translation[0], t_b[1] + a.translation[1]];
            let found = ops.iter().any(|c| {
                let dr: f64 = (0..2)
                    .flat_map(|i| (0..2).map(move |j| (i, j)))
                    .map(|(i, j)| (c.linear[i][j] - r[i][j]).abs())
                    .fold(0.0, f64::max);
                dr < 1e-6
                    && det.same_point(
                        det.canon_translation(t).0,
                        det.canon_translation(c.translation).0,
                    )
            });
            if !found {
                return false;
            }
        }
    }
    true
}

struct GroupData {
    max_rot: u32,
    rot_centers: HashMap<u32, Vec<[f64; 2]>>,
    mirror_dirs: Vec<f64>,
    mirror_axes: Vec<([f64; 2], [f64; 2])>,
    has_glide: bool,
    n_translations: usize,
    n_ops: usize,
}

fn group_data(p: &TorusPacking, ops: &[Isometry]) -> GroupData {
    let mut gd = GroupData {
        max_rot: 1,
        rot_centers: HashMap::new(),
        mirror_dirs: Vec::new(),
        mirror_axes: Vec::new(),
        has_glide: false,
        n_translations: 0,
        n_ops: ops.len(),
    };
    for op in ops {
        match &op.kind {
            IsometryKind::Translation { .. } => gd.n_translations += 1,
            IsometryKind::Rotation { order, centers } => {
                gd.max_rot = gd.max_rot.max(*order);
                gd.rot_centers
                    .entry(*order)
                    .or_default()
                    .extend(centers.iter().copied());
            }
            IsometryKind::Reflection {
                axis_point,
                axis_dir,
            } => {
                let th = axis_dir[1].atan2(axis_dir[0]).rem_euclid(PI);
                if !gd
                    .mirror_dirs
                    .iter()
                    .any(|&x| (x - th).abs() < 1e-6 || (x - th).abs() > PI - 1e-6)
                {
                    gd.mirror_dirs.push(th);
                }
                gd.mirror_axes.push((*axis_point, *axis_dir));
                // a mirror on a centered lattice also carries glide lines:
                // a representative with a half-period parallel shift
                if has_half_shift(p, op) {
                    gd.has_glide = true;
                }
            }
            IsometryKind::Glide { .. } => gd.has_glide = true,
        }
    }
    gd
}

fn has_half_shift(p: &TorusPacking, op: &Isometry) -> bool {
    let (dv, t) = match &op.kind {
        IsometryKind::Reflection { axis_dir, .. } => (*axis_dir, op.translation),
        _ => return false,
    };
    // shortest lattice vector parallel to the axis
    let mut period = f64::INFINITY;
    for a in -6i32..=6 {
        for b in -6i32..=6 {
            if a == 0 && b == 0 {
                continue;
            }
            let l = p.lattice_vector(a, b);
            let norm = (l[0] * l[0] + l[1] * l[1]).sqrt();
            if (l[0] * dv[1] - l[1] * dv[0]).abs() < 1e-7 * norm {
                period = period.min(norm);
            }
        }
    }
    if !period.is_finite() {
        return false;
    }
    for la in -6i32..=6 {
        for lb in -6i32..=6 {
            let lv = p.lattice_vector(la, lb);
            let shift = (t[0] + lv[0]) * dv[0] + (t[1] + lv[1]) * dv[1];
            if (shift.abs() - period / 2.0).abs() < 1e-6 {
                return true;
            }
        }
    }
    false
}

fn centers_on_mirrors(p: &TorusPacking, gd: &GroupData, order: u32) -> bool {
    let Some(centers) = gd.rot_centers.get(&order) else {
        return true;
    };
    centers.iter().all(|z| {
        gd.mirror_axes.iter().any(|(pt, dv)| {
            let nv = [-dv[1], dv[0]];
            (-2i32..=2).any(|a| {
                (-2i32..=2).any(|b| {
                    let lv = p.lattice_vector(a, b);
                    let zz = [z[0] + lv[0], z[1] + lv[1]];
                    ((zz[0] - pt[0]) * nv[0] + (zz[1] - pt[1]) * nv[1]).abs() < 1e-6
                })
            })
        })
    })
}

/// Applies the standard decision tree to the detected symmetry set, after
/// reducing the packing to its primitive cell.
pub fn classify(p: &TorusPacking) -> Result<WallpaperGroup> {
    let (prim, _) = primitive_form(p)?;
    let ops = find_symmetries(&prim);
    classify_with(&prim, &ops)
}

/// Classification when the symmetry set is already available.
pub fn classify_with(p: &TorusPacking, ops: &[Isometry]) -> Result<WallpaperGroup> {
    if !closure_holds(p, ops) {
        return Err(Error::InconsistentSymmetries(
            "detected operations do not close under composition".into(),
        ));
    }
    let gd = group_data(p, ops);
    if gd.n_translations == 0 || !gd.n_ops.is_multiple_of(gd.n_translations) {
        return Err(Error::InconsistentSymmetries(format!(
            "{} operations over {} translations",
            gd.n_ops, gd.n_translations
        )));
    }
    let point_order = gd.n_ops / gd.n_translations;
    let has_m = !gd.mirror_axes.is_empty();
    let group = match gd.max_rot {
        6 => {
            if has_m {
                WallpaperGroup::p6m
            } else {
                WallpaperGroup::p6
            }
        }
        4 => {
            if !has_m {
                WallpaperGroup::p4
            } else if centers_on_mirrors(p, &gd, 4) {
                WallpaperGroup::p4m
            } else {
                WallpaperGroup::p4g
            }
        }
        3 => {
            if !has_m {
                WallpaperGroup::p3
            } else if centers_on_mirrors(p, &gd, 3) {
                WallpaperGroup::p3m1
            } else {
                WallpaperGroup::p31m
            }
        }
        2 => {
            if has_m {
                if gd.mirror_dirs.len() >= 2 {
                    if centers_on_mirrors(p, &gd, 2) {
                        WallpaperGroup::pmm
                    } else {
                        WallpaperGroup::cmm
                    }
                } else {
                    WallpaperGroup::pmg
                }
            } else if gd.has_glide {
                WallpaperGroup::pgg
            } else {
                WallpaperGroup::p2
            }
        }
        1 => {
            if has_m {
                if gd.has_glide {
                    WallpaperGroup::cm
                } else {
                    WallpaperGroup::pm
                }
            } else if gd.has_glide {
                WallpaperGroup::pg
            } else {
                WallpaperGroup::p1
            }
        }
        other => {
            return Err(Error::InconsistentSymmetries(format!(
                "rotation order {other} is not lattice-compatible"
            )))
        }
    };
    let expected = expected_point_order(group);
    if !expected.contains(&point_order) {
        return Err(Error::InconsistentSymmetries(format!(
            "group {group} cannot have point order {point_order}"
        )));
    }
    Ok(group)
}

fn expected_point_order(g: WallpaperGroup) -> &'static [usize] {
    use WallpaperGroup::*;
    match g {
        p1 => &[1],
        p2 | pm | pg | cm => &[2],
        pmm | pmg | pgg | cmm | p4 => &[4],
        p3 => &[3],
        p3m1 | p31m | p6 => &[6],
        p4m | p4g => &[8],
        p6m => &[12],
    }
}

/// Orbifold-to-fundamental-region area ratio as a reduced fraction:
/// the reciprocal of the point group order. The fundamental region is the
/// primitive cell regardless of how the packing was stored.
pub fn orbifold_ratio(p: &TorusPacking) -> Result<(u64, u64)> {
    let (prim, _) = primitive_form(p)?;
    let ops = find_symmetries(&prim);
    classify_with(&prim, &ops)?;
    let n_trans = ops
        .iter()
        .filter(|o| matches!(o.kind, IsometryKind::Translation { .. }))
        .count() as u64;
    let n = ops.len() as u64;
    let g = gcd(n_trans, n);
    Ok((n_trans / g, n / g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{build_f53, build_ft, build_hexagonal, Disk, TorusPacking};

    #[test]
    fn hexagonal_is_p6m() {
        let p = build_hexagonal();
        let ops = find_symmetries(&p);
        assert_eq!(ops.len(), 12);
        assert!(ops
            .iter()
            .any(|o| matches!(o.kind, IsometryKind::Rotation { order: 6, .. })));
        assert!(ops
            .iter()
            .any(|o| matches!(o.kind, IsometryKind::Reflection { .. })));
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::p6m);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 12));
    }

    #[test]
    fn ft_is_cmm() {
        let p = build_ft(crate::roots::q1()).unwrap();
        let ops = find_symmetries(&p);
        let dirs: Vec<_> = ops
            .iter()
            .filter(|o| matches!(o.kind, IsometryKind::Reflection { .. }))
            .collect();
        assert!(dirs.len() >= 2);
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::cmm);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 4));
    }

    #[test]
    fn f53_is_pgg() {
        let p = build_f53(crate::roots::q53()).unwrap();
        let ops = find_symmetries(&p);
        assert!(ops
            .iter()
            .all(|o| !matches!(o.kind, IsometryKind::Reflection { .. })));
        assert!(ops
            .iter()
            .any(|o| matches!(o.kind, IsometryKind::Glide { .. })));
        assert!(ops
            .iter()
            .any(|o| matches!(o.kind, IsometryKind::Rotation { order: 2, .. })));
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::pgg);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 4));
    }

    #[test]
    fn striped_hexagonal_keeps_a_diagonal_mirror() {
        // a coset coloring of the hexagonal packing cannot break every
        // symmetry: the stripe labeling keeps the -30 degree mirror family
        let s3 = 3f64.sqrt();
        let p = TorusPacking::new(
            [[6.0, 0.0], [1.0, s3]],
            vec![
                Disk {
                    c: [0.0, 0.0],
                    r: 1.0,
                    label: "A".into(),
                },
                Disk {
                    c: [2.0, 0.0],
                    r: 1.0,
                    label: "B".into(),
                },
                Disk {
                    c: [4.0, 0.0],
                    r: 1.0,
                    label: "C".into(),
                },
            ],
        )
        .unwrap();
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::cm);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 2));
    }

    #[test]
    fn generic_three_label_packing_is_p1() {
        let p = TorusPacking::new(
            [[6.0, 0.0], [0.0, 6.0]],
            vec![
                Disk {
                    c: [0.0, 0.0],
                    r: 1.0,
                    label: "A".into(),
                },
                Disk {
                    c: [2.1, 0.3],
                    r: 0.8,
                    label: "B".into(),
                },
                Disk {
                    c: [4.0, 1.9],
                    r: 0.6,
                    label: "C".into(),
                },
            ],
        )
        .unwrap();
        assert!(p.verify().ok);
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::p1);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 1));
    }

    #[test]
    fn closure_on_constructions() {
        for p in [
            build_hexagonal(),
            build_ft(0.645).unwrap(),
            build_f53(0.655).unwrap(),
        ] {
            let ops = find_symmetries(&p);
            assert!(closure_holds(&p, &ops));
        }
    }

    #[test]
    fn doubled_cell_keeps_group_and_ratio() {
        // a non-primitive cell carries extra pure translations; the point
        // group and the orbifold ratio must come out unchanged
        let s3 = 3f64.sqrt();
        let p = TorusPacking::new(
            [[4.0, 0.0], [1.0, s3]],
            vec![
                Disk {
                    c: [0.0, 0.0],
                    r: 1.0,
                    label: "L".into(),
                },
                Disk {
                    c: [2.0, 0.0],
                    r: 1.0,
                    label: "L".into(),
                },
            ],
        )
        .unwrap();
        let ops = find_symmetries(&p);
        let n_trans = ops
            .iter()
            .filter(|o| matches!(o.kind, IsometryKind::Translation { .. }))
            .count();
        assert_eq!(n_trans, 2);
        assert_eq!(classify(&p).unwrap(), WallpaperGroup::p6m);
        assert_eq!(orbifold_ratio(&p).unwrap(), (1, 12));
    }
}
