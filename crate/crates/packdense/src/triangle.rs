//! Triangle-local densities for three mutually tangent discs.
//!
//! Everything here is expressed in one of two equivalent coordinate systems:
//! the half-angle parameters of the center triangle (normalized so the
//! incircle has radius 1, where `tan(theta_i)` is the i-th disc radius), or
//! the three radii directly. The density of the configuration is the covered
//! fraction of the center triangle, which is minimized exactly at the
//! equal-radius (equilateral) point with value `pi/sqrt(12)`.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// `pi / sqrt(12)`, the density of the hexagonal packing.
pub const HEX_DENSITY: f64 = 0.9068996821171089;

/// Angles closer to `pi/2` than this are rejected: `tan` diverges there and
/// a silent clamp would corrupt density comparisons.
const ANGLE_GUARD: f64 = 1e-9;

/// Tolerance on `theta1 + theta2 + theta3 = pi`.
const ANGLE_SUM_TOL: f64 = 1e-12;

/// Three half-angle-complement parameters of a tangency triangle,
/// with `theta1 + theta2 + theta3 = pi` and each in `(0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple {
    theta: [f64; 3],
}

impl AngleTriple {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        let theta = [theta1, theta2, theta3];
        for &t in &theta {
            if !t.is_finite() || t <= 0.0 || t >= FRAC_PI_2 - ANGLE_GUARD {
                return Err(Error::Domain(format!(
                    "angle {t} outside (0, pi/2 - {ANGLE_GUARD})"
                )));
            }
        }
        let sum = theta1 + theta2 + theta3;
        if (sum - PI).abs() > ANGLE_SUM_TOL {
            return Err(Error::Domain(format!(
                "angles sum to {sum}, expected pi within {ANGLE_SUM_TOL}"
            )));
        }
        Ok(Self { theta })
    }

    pub fn angles(&self) -> [f64; 3] {
        self.theta
    }
}

/// Three positive disc radii defining a tangency triangle (side lengths
/// `r_i + r_j`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusTriple {
    r: [f64; 3],
}

impl RadiusTriple {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        for &r in &[r1, r2, r3] {
            if !r.is_finite() || r <= 0.0 {
                return Err(Error::Domain(format!("radius {r} must be positive")));
            }
        }
        Ok(Self { r: [r1, r2, r3] })
    }

    pub fn radii(&self) -> [f64; 3] {
        self.r
    }
}

/// One solution of the two-size triangulated packing equation
/// `1/n + 1/m = 1/2`: the `a`-disc touches `n` others, the `b`-disc `2m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSizeSolution {
    /// Number of discs adjacent to the `a`-disc.
    pub n: u32,
    /// Half the number of discs adjacent to the `b`-disc.
    pub m: u32,
    /// Half-angle at the `a`-disc center in one triangle, `pi/n`.
    pub alpha: f64,
    /// Radius ratio `min(a,b)/max(a,b)` in `(0, 1]`.
    pub ratio: f64,
}

/// Area of one covered sector in the normalized triangle:
/// `a(theta) = (pi/2 - theta) * tan^2(theta)`.
pub fn sector_area(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    let t = theta.tan();
    Ok((FRAC_PI_2 - theta) * t * t)
}

/// First derivative of [`sector_area`]; used by the concavity audit.
pub fn sector_area_derivative(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    let t = theta.tan();
    Ok(1.0 + 2.0 * t * t - (PI - 2.0 * theta) * t * (1.0 + t * t))
}

/// Twice the area of the right triangle with unit leg and angle `theta`:
/// `t(theta) = tan(theta)`.
pub fn triangle_halfarea(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(theta.tan())
}

fn check_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta <= 0.0 || theta >= FRAC_PI_2 - ANGLE_GUARD {
        return Err(Error::Domain(format!(
            "angle {theta} outside (0, pi/2 - {ANGLE_GUARD})"
        )));
    }
    Ok(())
}

/// Density of three tangent discs in their center triangle, in angle form:
/// the covered sector areas over the triangle area.
pub fn density_angles(angles: &AngleTriple) -> f64 {
    let mut covered = 0.0;
    let mut total = 0.0;
    for &t in &angles.angles() {
        let tan = t.tan();
        covered += (FRAC_PI_2 - t) * tan * tan;
        total += tan;
    }
    covered / total
}

/// Inradius of the tangency triangle: `sqrt(r1 r2 r3 / (r1 + r2 + r3))`.
pub fn incircle_radius(radii: &RadiusTriple) -> f64 {
    let [r1, r2, r3] = radii.radii();
    (r1 * r2 * r3 / (r1 + r2 + r3)).sqrt()
}

/// Area of the tangency triangle by Heron's formula:
/// `sqrt(r1 r2 r3 (r1 + r2 + r3))`.
pub fn triangle_area_heron(radii: &RadiusTriple) -> f64 {
    let [r1, r2, r3] = radii.radii();
    (r1 * r2 * r3 * (r1 + r2 + r3)).sqrt()
}

/// Density of three tangent discs in their center triangle, in radius form.
pub fn density_radii(radii: &RadiusTriple) -> f64 {
    let inr = incircle_radius(radii);
    let area = triangle_area_heron(radii);
    let covered: f64 = radii
        .radii()
        .iter()
        .map(|&r| (FRAC_PI_2 - (r / inr).atan()) * r * r)
        .sum();
    covered / area
}

/// Half-angle parameters of the triangle spanned by a radius triple,
/// `theta_i = atan(r_i / R)` with `R` the inradius.
pub fn angles_from_radii(radii: &RadiusTriple) -> Result<AngleTriple> {
    let inr = incircle_radius(radii);
    let [r1, r2, r3] = radii.radii();
    AngleTriple::new((r1 / inr).atan(), (r2 / inr).atan(), (r3 / inr).atan())
}

/// Upper bound on the density of any packing with radius ratio at least `q`:
/// the density of a `(1, q, q)` tangent triple in its center triangle.
pub fn florian_bound(q: f64) -> Result<f64> {
    if !q.is_finite() || q <= 0.0 || q > 1.0 {
        return Err(Error::Domain(format!("ratio {q} outside (0, 1]")));
    }
    let asin = (q / (1.0 + q)).asin();
    Ok((PI * q * q + 2.0 * (1.0 - q * q) * asin) / (2.0 * q * (1.0 + 2.0 * q).sqrt()))
}

/// Ratio of the large-small-small density over the large-large-small
/// density at the same ratio `r`; exceeds 1 on all of `(0, 1)`.
pub fn ratio_lls_over_lss(r: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 || r >= 1.0 {
        return Err(Error::Domain(format!("ratio {r} outside (0, 1)")));
    }
    let lss = density_radii(&RadiusTriple::new(1.0, r, r)?);
    let lls = density_radii(&RadiusTriple::new(1.0, 1.0, r)?);
    Ok(lss / lls)
}

/// Density of the `(r0, r, 1)` triple with the intermediate radius varying,
/// `r0 <= r <= 1`.
pub fn intermediate_density_curve(r0: f64, r: f64) -> Result<f64> {
    if !(r0 > 0.0 && r0 <= r && r <= 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < r0 <= r <= 1, got r0 = {r0}, r = {r}"
        )));
    }
    Ok(density_radii(&RadiusTriple::new(r0, r, 1.0)?))
}

/// Result of scanning the angle simplex for the minimum density.
#[derive(Debug, Clone, Copy)]
pub struct MinDensityReport {
    pub min_value: f64,
    pub argmin: [f64; 3],
    pub grid_step: f64,
}

/// Scans a `grid_n x grid_n` grid of valid angle triples and reports the
/// minimum density and its location. The boundary strip `theta < 0.05` is
/// excluded; there a disc radius diverges.
pub fn check_min_density(grid_n: usize) -> MinDensityReport {
    assert!(grid_n >= 10, "grid_n must be at least 10");
    let eps = 0.05;
    let lo = eps;
    let hi = FRAC_PI_2 - eps;
    let step = (hi - lo) / (grid_n - 1) as f64;
    let mut min_value = f64::INFINITY;
    let mut argmin = [0.0; 3];
    for i in 0..grid_n {
        let t1 = lo + step * i as f64;
        for j in 0..grid_n {
            let t2 = lo + step * j as f64;
            let t3 = PI - t1 - t2;
            if !(lo..=hi).contains(&t3) {
                continue;
            }
            let Ok(angles) = AngleTriple::new(t1, t2, t3) else {
                continue;
            };
            let d = density_angles(&angles);
            if d < min_value {
                min_value = d;
                argmin = [t1, t2, t3];
            }
        }
    }
    MinDensityReport {
        min_value,
        argmin,
        grid_step: step,
    }
}

/// All integer solutions of `1/n + 1/m = 1/2` with `n >= 3`, `m >= 2`,
/// each with its half-angle `alpha = pi/n` and radius ratio.
pub fn enumerate_two_size() -> Vec<TwoSizeSolution> {
    let mut out = Vec::new();
    for n in 3u32..=100 {
        // m = 2n / (n - 2) must be a positive integer >= 2
        if (2 * n) % (n - 2) != 0 {
            continue;
        }
        let m = 2 * n / (n - 2);
        if m < 2 {
            continue;
        }
        let alpha = PI / n as f64;
        let b_over_a = alpha.sin() / (1.0 - alpha.sin());
        let ratio = if b_over_a > 1.0 {
            1.0 / b_over_a
        } else {
            b_over_a
        };
        out.push(TwoSizeSolution { n, m, alpha, ratio });
    }
    out
}
