//! The perturbed two-disc packing family.
//!
//! Starting from the triangulated two-disc packing with ratio `q1` (the root
//! of `x^4 - 10x^2 - 8x + 9` near 0.6376), the small disc is inflated to a
//! given ratio `q`, sliding the unit discs apart while keeping the remaining
//! tangencies. The family lives on `q in [q1, 1]` and degenerates to the
//! hexagonal packing at `q = 1`.

use crate::error::{Error, Result};
use crate::roots;
use std::f64::consts::PI;

/// Positions of the displaced discs in the quarter-cell frame: a unit disc
/// at `(0, sqrt(1+2q))`, a small disc at `(q, 0)`, and the second unit disc
/// at `(x, y)` tangent to both.
#[derive(Debug, Clone, Copy)]
pub struct FtGeometry {
    pub q: f64,
    pub x: f64,
    pub y: f64,
}

impl FtGeometry {
    /// Residual of the unit-unit tangency `x^2 + (y - sqrt(1+2q))^2 = 4`.
    pub fn residual_unit_unit(&self) -> f64 {
        let dy = self.y - (1.0 + 2.0 * self.q).sqrt();
        self.x * self.x + dy * dy - 4.0
    }

    /// Residual of the unit-small tangency `(x - q)^2 + y^2 = (1+q)^2`.
    pub fn residual_unit_small(&self) -> f64 {
        let dx = self.x - self.q;
        dx * dx + self.y * self.y - (1.0 + self.q) * (1.0 + self.q)
    }
}

fn check_domain(q: f64) -> Result<()> {
    let q1 = roots::q1();
    if !q.is_finite() || q < q1 - 1e-9 || q > 1.0 {
        return Err(Error::Domain(format!(
            "ratio {q} outside [{q1}, 1] (configuration overlaps below q1)"
        )));
    }
    Ok(())
}

fn sqrt_arg(q: f64) -> f64 {
    (2.0 * q * q * q + 5.0 * q * q + 2.0 * q).sqrt()
}

pub(crate) fn geometry_unchecked(q: f64) -> FtGeometry {
    let s = sqrt_arg(q);
    let d = (q + 1.0) * (q + 1.0);
    let x = 2.0 * (q + s) / d;
    let y = (2.0 * q * q * q + 5.0 * q * q + 2.0 * q * s - 1.0) / ((1.0 + 2.0 * q).sqrt() * d);
    FtGeometry { q, x, y }
}

/// Solves the two tangency constraints for the displaced unit disc.
pub fn ft_geometry(q: f64) -> Result<FtGeometry> {
    check_domain(q)?;
    Ok(geometry_unchecked(q))
}

/// Density of the family from the cell geometry:
/// `pi (q^2 + 1) / ((sqrt(1+2q) + y) x)`.
pub fn ft_density_geometric(q: f64) -> Result<f64> {
    let g = ft_geometry(q)?;
    Ok(PI * (q * q + 1.0) / (((1.0 + 2.0 * q).sqrt() + g.y) * g.x))
}

pub(crate) fn density_closed_unchecked(q: f64) -> f64 {
    let s = sqrt_arg(q);
    let num = PI * (q * q + 1.0) * (q + 1.0).powi(4) * (1.0 + 2.0 * q).sqrt();
    let den = 4.0 * q * (2.0 * q * q + 5.0 * q + s + 2.0) * (q + s);
    num / den
}

/// Density of the family as a closed-form expression in `q` alone.
pub fn ft_density_closed(q: f64) -> Result<f64> {
    check_domain(q)?;
    Ok(density_closed_unchecked(q))
}
