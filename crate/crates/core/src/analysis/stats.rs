//! Pearson correlation with a two-sided Student-t p-value.
//!
//! The tail probability is computed without special functions. Substituting
//! `t = sqrt(nu) * tan(phi)` turns the t density into `cos(phi)^(nu - 1)` on
//! `[0, pi/2)`, so
//!
//! ```text
//! p = ∫[phi0, pi/2] cos^(nu-1) / ∫[0, pi/2] cos^(nu-1),   phi0 = atan(|t| / sqrt(nu))
//! ```
//!
//! Both integrals are evaluated by adaptive Simpson quadrature over 80
//! equal panels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PANELS: usize = 80;
const PANEL_TOLERANCE: f64 = 1e-14;
const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PearsonResult {
    pub r: f64,
    pub p: f64,
    pub n: usize,
}

/// Sample Pearson correlation and its two-sided p-value under H0: rho = 0.
///
/// Perfectly correlated inputs (|r| = 1) report `p = 0`.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<PearsonResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::TooFewObservations(n));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput("pearson input".into()));
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let mut r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    // Exactly collinear data can miss ±1 by an ulp or two.
    if 1.0 - r.abs() <= 4.0 * f64::EPSILON {
        r = r.signum();
    }
    let p = if r.abs() == 1.0 {
        0.0
    } else {
        let df = (n - 2) as f64;
        let t = r * (df / (1.0 - r * r)).sqrt();
        student_t_two_sided(t, df)
    };
    Ok(PearsonResult { r, p, n })
}

/// `P(|T| >= |t|)` for Student's t with `df` degrees of freedom.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    assert!(df > 0.0, "degrees of freedom must be positive");
    if t.is_nan() {
        return f64::NAN;
    }
    if t == 0.0 {
        return 1.0;
    }
    let phi0 = (t.abs() / df.sqrt()).atan();
    let half_pi = std::f64::consts::FRAC_PI_2;
    if phi0 >= half_pi {
        return 0.0;
    }
    let density = |phi: f64| phi.cos().max(0.0).powf(df - 1.0);
    let total = integrate(&density, 0.0, half_pi);
    // Integrate the shorter side and take the complement of the other.
    let p = if phi0 > half_pi / 2.0 {
        integrate(&density, phi0, half_pi) / total
    } else {
        1.0 - integrate(&density, 0.0, phi0) / total
    };
    p.clamp(0.0, 1.0)
}

fn integrate(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == PANELS { b } else { lo + h };
            let (flo, fhi, fmid) = (f(lo), f(hi), f(0.5 * (lo + hi)));
            let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            simpson(f, lo, hi, flo, fmid, fhi, whole, PANEL_TOLERANCE, MAX_DEPTH)
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
