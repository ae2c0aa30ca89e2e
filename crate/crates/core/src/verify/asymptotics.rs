//! Empirical checks of the asymptotic formulas.

use crate::analytic::zeta;
use crate::{s_hybrid, sum_of_floor_powers, Error, Result, SumParams};

/// `|Σ_{n≤x}[x/n]^c / (ζ(c)·x^c) − 1|`.
pub fn floor_power_asymptotic_check(x: u64, c: f64) -> Result<f64> {
    if !(c.is_finite() && c > 1.0) {
        return Err(Error::domain(format!(
            "floor-power check requires c > 1, got {c}"
        )));
    }
    if x < 10 {
        return Err(Error::domain(format!(
            "floor-power check requires x >= 10, got {x}"
        )));
    }
    let sum = sum_of_floor_powers(x, c)?.to_f64();
    let z = zeta(c)?.to_f64();
    // Divide in stages so large c does not overflow x^c.
    let ratio = (sum / (x as f64).powf(c)) / z;
    Ok((ratio - 1.0).abs())
}

/// `S_{2,1}(x)·ζ(2)/(x ln x)`, which tends to 1.
pub fn logcase_ratio(x: u64) -> Result<f64> {
    if x < 2 {
        return Err(Error::domain(format!(
            "log-case ratio requires x >= 2, got {x}"
        )));
    }
    let params = SumParams::new(2.0, 1.0)?;
    let s = s_hybrid(&params, x)?.to_f64();
    let xf = x as f64;
    Ok(s * zeta(2.0)?.to_f64() / (xf * xf.ln()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendStep {
    pub x: u64,
    pub ratio: f64,
    /// Whether this ratio is closer to 1 than the previous one. `false`
    /// for the first step.
    pub closer: bool,
}

/// [`logcase_ratio`] along `xs`, flagging each step that moves towards 1.
pub fn logcase_trend(xs: &[u64]) -> Result<Vec<TrendStep>> {
    let mut out: Vec<TrendStep> = Vec::with_capacity(xs.len());
    for &x in xs {
        let ratio = logcase_ratio(x)?;
        let closer = out
            .last()
            .is_some_and(|prev| (ratio - 1.0).abs() < (prev.ratio - 1.0).abs());
        out.push(TrendStep { x, ratio, closer });
    }
    Ok(out)
}
