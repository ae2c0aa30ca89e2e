//! The sawtooth ψ(t) = {t} − 1/2 and Vaaler's trigonometric polynomial
//! approximation to it, with its Fejér-kernel error majorant.

use std::f64::consts::PI;

use crate::{Error, Result};

/// ψ(t) = {t} − 1/2, in `[−1/2, 1/2)`.
pub fn psi(t: f64) -> f64 {
    let frac = t - t.floor();
    // Tiny negative t can round {t} up to exactly 1.
    let frac = if frac >= 1.0 { 0.0 } else { frac };
    frac - 0.5
}

/// ψ(a/b) for integers, with the fractional part taken exactly.
#[inline]
pub fn psi_ratio(a: u64, b: u64) -> f64 {
    (a % b) as f64 / b as f64 - 0.5
}

/// Vaaler's weight Φ(t) = πt(1−|t|)cot(πt) + |t| on `|t| < 1`, with the
/// removable singularity Φ(0) = 1.
pub fn vaaler_phi(t: f64) -> Result<f64> {
    if t.is_nan() || t.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "vaaler_phi requires |t| < 1, got {t}"
        )));
    }
    let a = t.abs();
    if a == 0.0 {
        return Ok(1.0);
    }
    let pt = PI * a;
    Ok(pt * (1.0 - a) * pt.cos() / pt.sin() + a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaalerApprox {
    /// `−Σ_{h=1}^{H} Φ(h/(H+1))·sin(2πht)/(πh)`
    pub approx: f64,
    /// Fejér majorant of `|ψ(t) − approx|`.
    pub rh_bound: f64,
}

/// Degree-`H` approximation of ψ(t) and its error majorant
///
/// ```text
/// |R_H(t)| ≤ (1/(2H+2)) Σ_{|h|≤H} (1 − |h|/(H+1)) e(ht)
///          = (1/(2H+2)) · sin²(π(H+1)t) / ((H+1) sin²(πt))
/// ```
pub fn vaaler_approx(t: f64, h: u32) -> Result<VaalerApprox> {
    if h == 0 {
        return Err(Error::domain("vaaler_approx requires H >= 1"));
    }
    let scale = (h + 1) as f64;
    let mut approx = 0.0;
    for i in 1..=h {
        let hf = i as f64;
        approx -= vaaler_phi(hf / scale)? * (2.0 * PI * hf * t).sin() / (PI * hf);
    }
    Ok(VaalerApprox {
        approx,
        rh_bound: fejer_majorant(t, h),
    })
}

/// Closed form of the Fejér majorant, falling back to the defining sum
/// where `sin(πt)` is too small to divide by.
pub fn fejer_majorant(t: f64, h: u32) -> f64 {
    let scale = (h + 1) as f64;
    let r = t - t.round();
    let den = (PI * r).sin();
    if den.abs() < 1e-8 {
        return fejer_majorant_direct(t, h);
    }
    let num = (PI * scale * r).sin();
    num * num / (scale * den * den) / (2.0 * scale)
}

/// `(1/(2H+2)) Σ_{|h|≤H} (1 − |h|/(H+1)) cos(2πht)`, summed term by term.
pub fn fejer_majorant_direct(t: f64, h: u32) -> f64 {
    let scale = (h + 1) as f64;
    let r = t - t.round();
    let mut sum = 1.0;
    for i in 1..=h {
        sum += 2.0 * (1.0 - i as f64 / scale) * (2.0 * PI * i as f64 * r).cos();
    }
    sum / (2.0 * scale)
}
