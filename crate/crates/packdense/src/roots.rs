//! Certified numerical constants: bracketed bisection plus integer
//! polynomial certificates.
//!
//! Each named ratio is computed from its defining equation and then
//! cross-checked against an exact-integer-coefficient certificate
//! polynomial. The high-degree certificates are evaluated with compensated
//! Horner arithmetic; a plain double Horner pass loses every significant
//! digit near a root of the degree-31 certificate.

use crate::error::{Error, Result};
use crate::triangle::HEX_DENSITY;
use crate::{f53, ft};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Dense polynomial with exact integer coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        match coeffs.last() {
            Some(&c) if c != 0 => Ok(Self { coeffs }),
            _ => Err(Error::Domain(
                "polynomial needs a nonzero leading coefficient".into(),
            )),
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Plain Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c as f64;
        }
        acc
    }

    /// Compensated Horner evaluation (error-free transformations), accurate
    /// to a few ulps of the true value even under massive cancellation.
    pub fn eval_compensated(&self, x: f64) -> f64 {
        let mut s = *self.coeffs.last().unwrap() as f64;
        let mut c = 0.0;
        for &a in self.coeffs.iter().rev().skip(1) {
            let (p, ep) = two_prod(s, x);
            let (t, et) = two_sum(p, a as f64);
            s = t;
            c = c * x + (ep + et);
        }
        s + c
    }
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// Final bracket of a bisection run.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
}

/// Bisects `f` on `[lo, hi]` down to a bracket of width `tol`.
/// Requires opposite signs at the endpoints.
pub fn bisect_bracket(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<Bracket> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "bad bisection setup [{lo}, {hi}], tol {tol}"
        )));
    }
    let flo = f(lo);
    let fhi = f(hi);
    for (x, v) in [(lo, flo), (hi, fhi)] {
        if !v.is_finite() {
            return Err(Error::NonFinite { x });
        }
    }
    if flo == 0.0 {
        return Ok(Bracket {
            lo,
            hi: lo,
            root: lo,
        });
    }
    if fhi == 0.0 {
        return Ok(Bracket {
            lo: hi,
            hi,
            root: hi,
        });
    }
    if flo * fhi > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_neg = flo < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(Error::NonFinite { x: mid });
        }
        if (fm < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Bracket {
        lo,
        hi,
        root: 0.5 * (lo + hi),
    })
}

/// Bisection root: midpoint of the final bracket.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    Ok(bisect_bracket(f, lo, hi, tol)?.root)
}

// Scans [lo, hi] in `parts` pieces and returns the first subinterval with a
// sign change, skipping pieces where `f` is undefined.
fn find_sign_change(
    f: impl Fn(f64) -> Option<f64>,
    lo: f64,
    hi: f64,
    parts: usize,
) -> Result<(f64, f64)> {
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=parts {
        let x = lo + (hi - lo) * k as f64 / parts as f64;
        let v = match f(x) {
            Some(v) if v.is_finite() => v,
            _ => {
                prev = None;
                continue;
            }
        };
        if let Some((px, pv)) = prev {
            if pv * v <= 0.0 {
                return Ok((px, x));
            }
        }
        prev = Some((x, v));
    }
    Err(Error::NoSignChange { lo, hi })
}

fn poly_root(poly: &IntPolynomial, lo: f64, hi: f64) -> Result<f64> {
    let (blo, bhi) = find_sign_change(|x| Some(poly.eval(x)), lo, hi, 64)?;
    bisect(|x| poly.eval_compensated(x), blo, bhi, 1e-14)
}

fn q1_certificate() -> IntPolynomial {
    IntPolynomial::new(vec![9, -8, -10, 0, 1]).unwrap()
}

fn q53_certificate() -> IntPolynomial {
    IntPolynomial::new(vec![1, -96, 296, 176, -2410, -464, 4008, 1344, 89]).unwrap()
}

fn q2_certificate() -> IntPolynomial {
    IntPolynomial::new(vec![
        -9, -81, -369, -969, -1029, 243, 1235, 3643, 5445, 5805, 4749, 2757, 1161, 369, 81, 9,
    ])
    .unwrap()
}

fn qft_certificate() -> IntPolynomial {
    IntPolynomial::new(vec![
        -33075,
        -985635,
        -14152347,
        -132201675,
        -892845459,
        -4571655651,
        -18283967739,
        -57157331979,
        -138435598005,
        -256274678853,
        -346836129933,
        -279883089565,
        88889109343,
        815514300847,
        1783910866439,
        2719452571159,
        3313803241196,
        3384242724844,
        2959314640332,
        2239664278028,
        1474917242352,
        846900183408,
        423619513104,
        183725780496,
        68441069376,
        21595717440,
        5674077504,
        1214611776,
        204553728,
        25449984,
        2073600,
        82944,
    ])
    .unwrap()
}

/// Ratio of the unperturbed triangulated two-disc packing.
pub fn q1() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| poly_root(&q1_certificate(), 0.60, 0.70).expect("q1 root"))
}

/// Ratio of the unperturbed triangulated three-disc packing.
pub fn q53() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| poly_root(&q53_certificate(), 0.60, 0.70).expect("q53 root"))
}

/// Identifier of a certified ratio constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioName {
    Q1,
    Q0,
    Q2,
    Q53,
    Qft,
    Qb,
}

impl std::fmt::Display for RatioName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RatioName::Q1 => "q1",
            RatioName::Q0 => "q0",
            RatioName::Q2 => "q2",
            RatioName::Q53 => "q53",
            RatioName::Qft => "qFT",
            RatioName::Qb => "qB",
        };
        f.write_str(s)
    }
}

/// How a constant is certified: an integer polynomial with a sign change
/// across the bracket, or a defining equation with a small residual.
#[derive(Debug, Clone)]
pub enum Certificate {
    Polynomial(IntPolynomial),
    Equation(&'static str),
}

/// A named constant with its bracket and certificate.
#[derive(Debug, Clone)]
pub struct CriticalRatio {
    pub name: RatioName,
    pub value: f64,
    pub bracket: (f64, f64),
    pub certificate: Certificate,
    pub certificate_ok: bool,
}

const CERT_HALF_WIDTH: f64 = 5e-13;

fn certify(
    name: RatioName,
    value: f64,
    certificate: Certificate,
    residual: Option<f64>,
) -> Result<CriticalRatio> {
    let bracket = (value - CERT_HALF_WIDTH, value + CERT_HALF_WIDTH);
    let ok = match &certificate {
        Certificate::Polynomial(p) => {
            let a = p.eval_compensated(bracket.0);
            let b = p.eval_compensated(bracket.1);
            a * b < 0.0
        }
        Certificate::Equation(_) => residual.map(|r| r.abs() < 1e-10).unwrap_or(false),
    };
    if !ok {
        return Err(Error::CertificateMismatch(format!(
            "{name} = {value} fails its certificate"
        )));
    }
    Ok(CriticalRatio {
        name,
        value,
        bracket,
        certificate,
        certificate_ok: ok,
    })
}

/// Computes the six named constants from their defining equations and
/// verifies each against its certificate. Returned in increasing order.
pub fn critical_ratios() -> Result<Vec<CriticalRatio>> {
    let q1v = q1();
    let q53v = q53();
    let d53 = f53::unperturbed_density();

    // defining equations for the remaining three ratio constants
    let ft_gap = |q: f64| Some(ft::density_closed_unchecked(q) - HEX_DENSITY);
    let (lo, hi) = find_sign_change(ft_gap, 0.60, 0.70, 64)?;
    let q2v = bisect(
        |q| ft::density_closed_unchecked(q) - HEX_DENSITY,
        lo,
        hi,
        1e-14,
    )?;

    let ft_d53 = |q: f64| Some(ft::density_closed_unchecked(q) - d53);
    let (lo, hi) = find_sign_change(ft_d53, 0.60, 0.70, 64)?;
    let q0v = bisect(|q| ft::density_closed_unchecked(q) - d53, lo, hi, 1e-14)?;

    let delta_gap = |q: f64| f53::f53_density_closed(q).ok().map(|d| d - HEX_DENSITY);
    let (lo, hi) = find_sign_change(delta_gap, 0.60, 0.70, 64)?;
    let qftv = bisect(
        |q| f53::f53_density_closed(q).expect("in domain") - HEX_DENSITY,
        lo,
        hi,
        1e-14,
    )?;

    let qbv = f53::qb_closed_form();

    let s12 = 12f64.sqrt();
    let qb_residual = qbv * qbv * (5.0 * (PI / 5.0).tan() - s12) - (s12 - 7.0 * (PI / 7.0).tan());
    let q0_residual = ft::density_closed_unchecked(q0v) - d53;

    let table = vec![
        certify(
            RatioName::Q1,
            q1v,
            Certificate::Polynomial(q1_certificate()),
            None,
        )?,
        certify(
            RatioName::Q0,
            q0v,
            Certificate::Equation("two-disc family density equals the base three-disc density"),
            Some(q0_residual),
        )?,
        certify(
            RatioName::Q2,
            q2v,
            Certificate::Polynomial(q2_certificate()),
            None,
        )?,
        certify(
            RatioName::Q53,
            q53v,
            Certificate::Polynomial(q53_certificate()),
            None,
        )?,
        certify(
            RatioName::Qft,
            qftv,
            Certificate::Polynomial(qft_certificate()),
            None,
        )?,
        certify(
            RatioName::Qb,
            qbv,
            Certificate::Equation("closed form in tan(pi/5), tan(pi/7)"),
            Some(qb_residual),
        )?,
    ];

    for w in table.windows(2) {
        if !(w[0].value < w[1].value) {
            return Err(Error::Consistency(format!(
                "ratio ordering violated: {} = {} vs {} = {}",
                w[0].name, w[0].value, w[1].name, w[1].value
            )));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_basics() {
        let p = q1_certificate();
        assert_eq!(p.eval(0.0), 9.0);
        assert_eq!(p.eval(1.0), -8.0);
        assert_eq!(p.degree(), 4);
        let any = IntPolynomial::new(vec![7, 3, 2]).unwrap();
        assert_eq!(any.eval(0.0), 7.0);
        assert!(IntPolynomial::new(vec![1, 0]).is_err());
    }

    #[test]
    fn compensated_matches_plain_when_benign() {
        let p = IntPolynomial::new(vec![1, 2, 3]).unwrap();
        for x in [0.1, 0.9, 2.5, -1.75] {
            assert!((p.eval(x) - p.eval_compensated(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bisect_errors() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            bisect(|x| (x - 0.5).ln(), 0.0, 1.0, 1e-12),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn base_roots() {
        assert!((q1() - 0.6375559772).abs() < 1e-9);
        assert!((q53() - 0.6510501858).abs() < 1e-9);
        let p = q1_certificate();
        let r = bisect(|x| p.eval_compensated(x), 0.6, 0.65, 1e-12).unwrap();
        assert!((r - 0.6375559772).abs() < 1e-9);
        let p = q53_certificate();
        let r = bisect(|x| p.eval_compensated(x), 0.64, 0.66, 1e-12).unwrap();
        assert!((r - 0.6510501858).abs() < 1e-9);
    }

    #[test]
    fn determinism() {
        let a = critical_ratios().unwrap();
        let b = critical_ratios().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value.to_bits(), y.value.to_bits());
        }
    }
}
