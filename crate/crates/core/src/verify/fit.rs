//! Power-law fit of `|S − main term|` against `x`.

use std::time::Instant;

use rayon::prelude::*;

use crate::analytic::{MainTermCase, MainTermSpec};
use crate::numeric::UNIT_ROUNDOFF;
use crate::{CertifiedValue, Error, FloorSum, Limits, Result, SumParams};

pub const MIN_FIT_SAMPLES: usize = 5;

/// Margin by which `|delta|` must exceed its certificate to enter a fit.
const ADMISSION_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSample {
    pub x: u64,
    pub s_value: CertifiedValue,
    pub main: CertifiedValue,
    pub delta: f64,
    pub seconds: f64,
    pub admitted: bool,
}

impl ErrorSample {
    /// Bound on the error in `delta`.
    pub fn certificate(&self) -> f64 {
        self.s_value.f64_error() + self.main.abs_error + UNIT_ROUNDOFF * self.delta.abs()
    }
}

/// Least squares of `log10|delta|` on `log10 x` over the admitted samples.
/// `samples` holds every grid point, admitted or not.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub samples: Vec<ErrorSample>,
    pub theta_reference: f64,
}

impl FitResult {
    pub fn admitted(&self) -> impl Iterator<Item = &ErrorSample> {
        self.samples.iter().filter(|s| s.admitted)
    }
}

/// `points` integers spaced geometrically from `x_min` to `x_max`,
/// deduplicated after rounding.
pub fn geometric_grid(x_min: u64, x_max: u64, points: usize) -> Result<Vec<u64>> {
    if x_min == 0 || x_max <= x_min || points < 2 {
        return Err(Error::domain(format!(
            "grid requires 1 <= x_min < x_max and points >= 2 (got {x_min}, {x_max}, {points})"
        )));
    }
    let (lo, hi) = ((x_min as f64).ln(), (x_max as f64).ln());
    let step = (hi - lo) / (points - 1) as f64;
    let mut grid: Vec<u64> = (0..points)
        .map(|i| match i {
            0 => x_min,
            i if i == points - 1 => x_max,
            i => ((lo + step * i as f64).exp().round() as u64).clamp(x_min, x_max),
        })
        .collect();
    grid.dedup();
    Ok(grid)
}

pub fn fit_error_exponent(
    params: &SumParams,
    x_min: u64,
    x_max: u64,
    points: usize,
) -> Result<FitResult> {
    fit_error_exponent_with(params, x_min, x_max, points, &Limits::default())
}

pub fn fit_error_exponent_with(
    params: &SumParams,
    x_min: u64,
    x_max: u64,
    points: usize,
    limits: &Limits,
) -> Result<FitResult> {
    let spec = MainTermSpec::new(params)?;
    if spec.case != MainTermCase::Linear {
        return Err(Error::domain(format!(
            "fits require k - j >= 0, got k - j = {}",
            params.k() - params.j()
        )));
    }
    if x_min < 1000 {
        return Err(Error::domain(format!(
            "fits require x_min >= 1000, got {x_min}"
        )));
    }
    if points < MIN_FIT_SAMPLES {
        return Err(Error::domain(format!(
            "fits require at least {MIN_FIT_SAMPLES} points, got {points}"
        )));
    }
    let grid = geometric_grid(x_min, x_max, points)?;
    let eval = FloorSum::new(*limits);
    let samples = grid
        .par_iter()
        .map(|&x| {
            let start = Instant::now();
            let s_value = eval.hybrid(params, x)?;
            let seconds = start.elapsed().as_secs_f64();
            let main = spec.evaluate(x as f64)?;
            let delta = s_value.to_f64() - main.to_f64();
            let mut sample = ErrorSample {
                x,
                s_value,
                main,
                delta,
                seconds,
                admitted: false,
            };
            sample.admitted = delta.abs() > ADMISSION_FACTOR * sample.certificate();
            Ok(sample)
        })
        .collect::<Result<Vec<_>>>()?;

    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.admitted)
        .map(|s| ((s.x as f64).log10(), s.delta.abs().log10()))
        .collect();
    if points.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData {
            admitted: points.len(),
            required: MIN_FIT_SAMPLES,
        });
    }
    let (slope, intercept, r_squared) = least_squares(&points);
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        samples,
        theta_reference: spec.theta.expect("linear case carries theta"),
    })
}

/// `(slope, intercept, r²)`.
fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    // A flat response is fitted perfectly by the constant.
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    (slope, intercept, r_squared)
}
