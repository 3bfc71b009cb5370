//! The perturbed three-disc packing family.
//!
//! The base configuration is the triangulated three-disc packing with radii
//! `1 > p > q` at ratio `q53` (root of the degree-8 certificate near 0.651).
//! Perturbing both smaller radii upward while keeping the medium discs in
//! mutual contact traces a one-parameter family in `q`; the contact
//! condition is the quartic constraint solved by [`solve_p`]. The family
//! degenerates to the hexagonal packing at `p = q = 1`.

use crate::error::{Error, Result};
use crate::roots;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Quartic contact constraint tying the medium radius `p` to the small
/// radius `q`; zero exactly when the two medium discs remain tangent.
pub fn medium_contact_residual(p: f64, q: f64) -> f64 {
    2.0 * p.powi(4) + (4.0 * q + 3.0) * p.powi(3) + (2.0 * q * q - 2.0 * q + 1.0) * p * p
        - (5.0 * q * q + 6.0 * q) * p
        + q * q
}

/// Local geometry around a symmetry center flanked by `r1`-discs off the
/// axis and an `r3`-disc on it. `x` is the on-axis offset of the `r3`
/// center, `y` the off-axis offset of the `r1` centers, and `d` the
/// distance between the two `r1` centers in the mirror configuration.
#[derive(Debug, Clone, Copy)]
pub struct F53Geometry {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub x: f64,
    pub y: f64,
    pub d: f64,
    /// False when `y < r1` or `x < r3`: the configuration is tangency-
    /// consistent but the discs would overlap in the assembled packing.
    pub valid: bool,
}

/// Solves the local tangency relations for the `(r1, r2, r3)` configuration.
pub fn f53_geometry(r1: f64, r2: f64, r3: f64) -> Result<F53Geometry> {
    for &r in &[r1, r2, r3] {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::Domain(format!("radius {r} must be positive")));
        }
    }
    let s = r1 + r3;
    let d2 = 16.0 * r1 * r2 * r3 * (r1 + r2 + r3) / ((r2 + r3) * (r2 + r3));
    let x = d2 / (2.0 * s) - s;
    let y2 = s * s - x * x;
    if y2 < 0.0 {
        return Err(Error::Domain(format!(
            "no geometry: |x| = {} exceeds r1 + r3 = {s}",
            x.abs()
        )));
    }
    let y = y2.sqrt();
    let tol = 1e-9 * s;
    Ok(F53Geometry {
        r1,
        r2,
        r3,
        x,
        y,
        d: d2.sqrt(),
        valid: y >= r1 - tol && x >= r3 - tol,
    })
}

/// Area `2xy` of the rhombus spanned by two `r1`-discs and two `b`-discs
/// in the `(r1, a, b)` local configuration.
pub fn quad_area(r1: f64, a: f64, b: f64) -> Result<f64> {
    let g = f53_geometry(r1, a, b)?;
    Ok(2.0 * g.x * g.y)
}

fn check_domain(q: f64) -> Result<f64> {
    let q53 = roots::q53();
    if !q.is_finite() || q < q53 - 1e-9 || q > 1.0 {
        return Err(Error::Domain(format!(
            "ratio {q} outside [{q53}, 1] (medium-contact branch undefined below q53)"
        )));
    }
    Ok(q.max(q53))
}

/// Medium radius of the unperturbed base packing: the contact-branch value
/// at `q53`.
pub fn unperturbed_medium_radius() -> f64 {
    static P53: OnceLock<f64> = OnceLock::new();
    *P53.get_or_init(|| solve_p_at(roots::q53(), None).expect("base medium radius"))
}

/// Density of the unperturbed base packing.
pub fn unperturbed_density() -> f64 {
    static D53: OnceLock<f64> = OnceLock::new();
    *D53.get_or_init(|| f53_density_assembled(roots::q53()).expect("base density"))
}

// Root of the contact quartic in (q, 1] near a previous branch point.
// The residual is negative at p = q and nonnegative at p = 1 for q <= 1,
// so a sign-change bracket always exists inside [q, 1].
fn solve_p_at(q: f64, prev: Option<f64>) -> Result<f64> {
    if q >= 1.0 {
        return Ok(1.0);
    }
    let f = |p: f64| medium_contact_residual(p, q);
    let (mut lo, mut hi) = match prev {
        Some(p) => ((p - 0.05).max(q), (p + 0.05).min(1.0)),
        None => (q, 1.0),
    };
    let mut widen = 0;
    while f(lo) * f(hi) > 0.0 {
        lo = (lo - 0.05).max(q);
        hi = (hi + 0.05).min(1.0);
        widen += 1;
        if widen > 24 {
            return Err(Error::BracketFailure(format!(
                "contact-branch continuation lost the root at q = {q}"
            )));
        }
    }
    let b = roots::bisect_bracket(f, lo, hi, 1e-15)?;
    let p = b.root;
    let res = medium_contact_residual(p, q);
    if res.abs() > 1e-12 {
        return Err(Error::BracketFailure(format!(
            "contact residual {res} at p = {p}, q = {q} exceeds 1e-12"
        )));
    }
    Ok(p)
}

/// Medium radius `p(q)` on the branch continuous from the base packing,
/// with `p(q53)` the base medium radius and `p(1) = 1`.
pub fn solve_p(q: f64) -> Result<f64> {
    let q = check_domain(q)?;
    let q53 = roots::q53();
    let mut p = unperturbed_medium_radius();
    if q <= q53 {
        return Ok(p);
    }
    let steps = ((q - q53) / 5e-3).ceil().max(1.0) as usize;
    for k in 1..=steps {
        let qk = q53 + (q - q53) * k as f64 / steps as f64;
        p = solve_p_at(qk, Some(p))?;
    }
    Ok(p)
}

/// Density of the perturbed packing by area assembly: four discs of each
/// size per fundamental region over sixteen tangency triangles plus the two
/// rhombus pairs.
pub fn f53_density_assembled(q: f64) -> Result<f64> {
    let q = check_domain(q)?;
    let p = solve_p(q)?;
    let covered = 4.0 * PI * (1.0 + p * p + q * q);
    let tri = (p * q * (1.0 + p + q)).sqrt();
    let cell = 16.0 * tri + 2.0 * quad_area(1.0, p, q)? + 2.0 * quad_area(1.0, q, p)?;
    Ok(covered / cell)
}

/// Density of the perturbed packing as a closed-form expression in `p, q`.
pub fn f53_density_closed(q: f64) -> Result<f64> {
    let q = check_domain(q)?;
    let p = solve_p(q)?;
    let num = PI * (1.0 + p * p + q * q) * (p + q).powi(4) * (1.0 + p).powi(2) * (1.0 + q).powi(2);
    let den = 32.0
        * p
        * q
        * (1.0 + p + q)
        * (8.0 * p * p * q * q - (p * p - 6.0 * p * q + q * q) * (1.0 + p + q - p * q))
        * (p * q * (1.0 + p + q)).sqrt();
    Ok(num / den)
}

/// One point of the perturbed family: the small radius, the medium radius
/// on the contact branch, and the resulting density.
#[derive(Debug, Clone, Copy)]
pub struct F53Point {
    pub q: f64,
    pub p: f64,
    pub density: f64,
}

/// Evaluates the family at `q`; the returned point satisfies `q < p < 1`
/// (or `p = q = 1`) with a contact residual below 1e-9.
pub fn family_point(q: f64) -> Result<F53Point> {
    let q = check_domain(q)?;
    let p = solve_p(q)?;
    let density = f53_density_closed(q)?;
    if !(q < p && p < 1.0 || (p == 1.0 && q == 1.0)) {
        return Err(Error::Consistency(format!(
            "branch point (p, q) = ({p}, {q}) violates q < p < 1"
        )));
    }
    Ok(F53Point { q, p, density })
}

/// Ratio threshold above which the hexagonal packing is known optimal:
/// `sqrt((sqrt(12) - 7 tan(pi/7)) / (5 tan(pi/5) - sqrt(12)))`.
pub fn qb_closed_form() -> f64 {
    let s12 = 12f64.sqrt();
    ((s12 - 7.0 * (PI / 7.0).tan()) / (5.0 * (PI / 5.0).tan() - s12)).sqrt()
}
