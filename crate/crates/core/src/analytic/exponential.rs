//! Sawtooth sums over arithmetic weights: ϑ(x, z) and the dyadic sums
//! ℧_{δ,j,k}(x, W), with the power envelopes their size is compared to.

use crate::numeric::NeumaierSum;
use crate::sieve::{segment_phi_with, sieve_mu_with};
use crate::{CertifiedValue, Error, Limits, Result, SumParams};

use super::vaaler::psi_ratio;

/// `ϑ(x, z) = x Σ_{m ≤ x/z} μ(m)/m · ψ(x/m)`.
pub fn vartheta(x: u64, z: f64) -> Result<CertifiedValue> {
    vartheta_with(x, z, &Limits::default())
}

pub fn vartheta_with(x: u64, z: f64, limits: &Limits) -> Result<CertifiedValue> {
    if x == 0 || !(z >= 1.0 && z <= x as f64) {
        return Err(Error::domain(format!(
            "vartheta requires 1 <= z <= x (x={x}, z={z})"
        )));
    }
    let m_max = floor_div(x, z);
    let mu = sieve_mu_with(m_max, limits)?;
    let mut sum = NeumaierSum::new(4.0 * f64::EPSILON);
    for (i, &u) in mu.values().iter().enumerate() {
        if u != 0 {
            let m = i as u64 + 1;
            sum.add(u as f64 / m as f64 * psi_ratio(x, m));
        }
    }
    let xf = x as f64;
    let value = xf * sum.value();
    let err = xf * sum.certificate() + crate::numeric::UNIT_ROUNDOFF * value.abs();
    Ok(CertifiedValue::float(value, err, sum.terms()))
}

/// `⌊x/z⌋`, corrected for rounding in the float division.
pub(crate) fn floor_div(x: u64, z: f64) -> u64 {
    let mut q = (x as f64 / z).floor() as u64;
    while q > 0 && q as f64 * z > x as f64 {
        q -= 1;
    }
    while ((q + 1) as f64) * z <= x as f64 {
        q += 1;
    }
    q
}

/// `℧_{δ,j,k}(x, W) = Σ_{W<w≤2W} φ(w)/w^{k−j+1} · ψ(x/(w+δ))`.
pub fn mho_sum(x: u64, w: u64, delta: u8, params: &SumParams) -> Result<CertifiedValue> {
    mho_sum_with(x, w, delta, params, &Limits::default())
}

pub fn mho_sum_with(
    x: u64,
    w: u64,
    delta: u8,
    params: &SumParams,
    limits: &Limits,
) -> Result<CertifiedValue> {
    if x == 0 || w == 0 || delta > 1 {
        return Err(Error::domain(format!(
            "mho_sum requires x, W >= 1 and delta in {{0,1}} (x={x}, W={w}, delta={delta})"
        )));
    }
    let hi = w
        .checked_mul(2)
        .ok_or_else(|| Error::domain("2W overflows"))?;
    let phi = segment_phi_with(w + 1, hi, limits)?;
    let exponent = params.c() - 1.0;
    let int_exp = (exponent.fract() == 0.0).then_some(exponent as i32);
    let pow_err = int_exp.map_or(2.0, |e| e.unsigned_abs() as f64 + 1.0);
    let mut sum = NeumaierSum::new((pow_err + 4.0) * f64::EPSILON);
    for (i, &p) in phi.values().iter().enumerate() {
        let wv = w + 1 + i as u64;
        let weight = match int_exp {
            Some(e) => (wv as f64).powi(e),
            None => (wv as f64).powf(exponent),
        };
        sum.add(p as f64 * weight * psi_ratio(x, wv + delta as u64));
    }
    Ok(CertifiedValue::float(
        sum.value(),
        sum.certificate(),
        sum.terms(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeBranch {
    /// `W < x^{2/3}`: `x^{−1/2}W^{1−k+j} + x^{1/6}W^{1/12−k+j}`.
    Small,
    /// `W ≥ x^{2/3}`: `x^{−1/2}W^{7/8−k+j} + W^{5/16−k+j}`.
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub small: f64,
    pub large: f64,
    pub branch: EnvelopeBranch,
    /// The selected envelope, already scaled by `x^ε`.
    pub value: f64,
}

/// The power envelope bounding `|℧(x, W)|` up to an unknown constant.
/// Only ratios against it are meaningful.
pub fn prop_bound_envelope(x: u64, w: u64, params: &SumParams, eps: f64) -> Result<Envelope> {
    let d = params.k() - params.j();
    if !(0.0..1.0).contains(&d) {
        return Err(Error::domain(format!(
            "envelope requires 0 <= k - j < 1, got {d}"
        )));
    }
    if w == 0 || w > x {
        return Err(Error::domain(format!(
            "envelope requires 1 <= W <= x (W={w}, x={x})"
        )));
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::domain(format!("epsilon must be >= 0, got {eps}")));
    }
    let (xf, wf) = (x as f64, w as f64);
    let scale = xf.powf(eps);
    let small = xf.powf(-0.5) * wf.powf(1.0 - d) + xf.powf(1.0 / 6.0) * wf.powf(1.0 / 12.0 - d);
    let large = xf.powf(-0.5) * wf.powf(7.0 / 8.0 - d) + wf.powf(5.0 / 16.0 - d);
    // W < x^{2/3} decided exactly as W³ < x².
    let branch = if (w as u128).pow(3) < (x as u128).pow(2) {
        EnvelopeBranch::Small
    } else {
        EnvelopeBranch::Large
    };
    let chosen = match branch {
        EnvelopeBranch::Small => small,
        EnvelopeBranch::Large => large,
    };
    Ok(Envelope {
        small: scale * small,
        large: scale * large,
        branch,
        value: scale * chosen,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MhoRow {
    pub w: u64,
    pub delta: u8,
    pub mho: CertifiedValue,
    pub envelope: Envelope,
    pub ratio: f64,
}

/// `|℧|/envelope` for `W = 2^lo, …, 2^hi`.
pub fn mho_sweep(
    x: u64,
    params: &SumParams,
    delta: u8,
    log2_range: std::ops::RangeInclusive<u32>,
    eps: f64,
) -> Result<Vec<MhoRow>> {
    log2_range
        .map(|e| {
            let w = 1u64 << e;
            let mho = mho_sum(x, w, delta, params)?;
            let envelope = prop_bound_envelope(x, w, params, eps)?;
            let ratio = mho.to_f64().abs() / envelope.value;
            Ok(MhoRow {
                w,
                delta,
                mho,
                envelope,
                ratio,
            })
        })
        .collect()
}
