use crate::numeric::UNIT_ROUNDOFF;
use crate::{CertifiedValue, Error, Result, SumParams};

use super::{series_constant, zeta};

/// Certificate target for main-term constants.
const CONSTANT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MainTermCase {
    /// `j − k = 1`: main term `x·log x / ζ(2)`.
    Log,
    /// `k − j ≥ 0`: main term `C(k−j+2)·x`.
    Linear,
    /// `j − k ≥ 2`: no asymptotic formula, only bounds.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MainTermSpec {
    pub case: MainTermCase,
    /// `1/ζ(2)` for [`MainTermCase::Log`], `C(c′)` for
    /// [`MainTermCase::Linear`], absent otherwise.
    pub constant: Option<CertifiedValue>,
    /// Error exponent Θ; present in the linear case only.
    pub theta: Option<f64>,
}

impl MainTermSpec {
    pub fn new(params: &SumParams) -> Result<Self> {
        let c = params.c();
        if c == 1.0 {
            let z = zeta(2.0)?;
            let inv = 1.0 / z.to_f64();
            let err = z.abs_error / (z.to_f64() * (z.to_f64() - z.abs_error)) + UNIT_ROUNDOFF * inv;
            Ok(MainTermSpec {
                case: MainTermCase::Log,
                constant: Some(CertifiedValue::float(inv, err, z.terms)),
                theta: None,
            })
        } else if c <= 0.0 {
            Ok(MainTermSpec {
                case: MainTermCase::Linear,
                constant: Some(series_constant(2.0 - c, CONSTANT_EPS)?),
                theta: Some(theta_exponent(params)?),
            })
        } else if c >= 2.0 {
            Ok(MainTermSpec {
                case: MainTermCase::None,
                constant: None,
                theta: None,
            })
        } else {
            Err(unsupported(c))
        }
    }

    /// The main term at real `x ≥ 1`.
    pub fn evaluate(&self, x: f64) -> Result<CertifiedValue> {
        if !(x.is_finite() && x >= 1.0) {
            return Err(Error::domain(format!("main term requires x >= 1, got {x}")));
        }
        let constant = match (&self.case, &self.constant) {
            (MainTermCase::None, _) | (_, None) => {
                return Err(Error::domain(
                    "no main term for j - k >= 2; use the floor-power bounds instead",
                ))
            }
            (_, Some(c)) => c,
        };
        let (value, scale) = match self.case {
            MainTermCase::Log => {
                let scale = x * x.ln();
                (constant.to_f64() * scale, scale)
            }
            _ => (constant.to_f64() * x, x),
        };
        let err = constant.abs_error * scale + 4.0 * UNIT_ROUNDOFF * value.abs();
        Ok(CertifiedValue::float(value, err, constant.terms))
    }
}

fn unsupported(c: f64) -> Error {
    Error::domain(format!(
        "j - k = {c} lies outside every asymptotic case (need j-k = 1 or k-j >= 0)"
    ))
}

/// The main term of `S_{j,k}(x)`: `x log x/ζ(2)` when `j − k = 1`,
/// `C(k−j+2)·x` when `k ≥ j`.
pub fn main_term(params: &SumParams, x: f64) -> Result<CertifiedValue> {
    let c = params.c();
    if c != 1.0 && c > 0.0 {
        return Err(unsupported(c));
    }
    MainTermSpec::new(params)?.evaluate(x)
}

/// Θ_{j,k}: 0 when `k − j ≥ 1`, `(5−k+j)/(21−k+j)` when `0 ≤ k − j < 1`.
pub fn theta_exponent(params: &SumParams) -> Result<f64> {
    let d = params.k() - params.j();
    if d < 0.0 {
        return Err(Error::domain(format!("theta requires k - j >= 0, got {d}")));
    }
    Ok(if d >= 1.0 {
        0.0
    } else {
        (5.0 - d) / (21.0 - d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn p(j: f64, k: f64) -> SumParams {
        SumParams::new(j, k).unwrap()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta_exponent(&p(1.0, 2.0)).unwrap(), 0.0);
        assert_eq!(theta_exponent(&p(1.0, 3.0)).unwrap(), 0.0);
        assert_eq!(theta_exponent(&p(1.0, 1.0)).unwrap(), 5.0 / 21.0);
        assert_eq!(theta_exponent(&p(3.0, 3.0)).unwrap(), 5.0 / 21.0);
        assert_eq!(theta_exponent(&p(1.0, 1.5)).unwrap(), 9.0 / 41.0);
        assert!(theta_exponent(&p(2.0, 1.0)).is_err());
    }

    #[test]
    fn log_case() {
        let v = main_term(&p(2.0, 1.0), E).unwrap();
        assert!((v.to_f64() - E * 6.0 / (PI * PI)).abs() <= v.abs_error + 1e-15);
        let big = main_term(&p(2.0, 1.0), 1e6).unwrap();
        assert!((big.to_f64() - 8_398_823.294_136_927).abs() < 1e-6);
    }

    #[test]
    fn log_case_doubling_factor() {
        for x in [10.0, 1e3, 1e6, 1e9] {
            let a = main_term(&p(2.0, 1.0), x).unwrap().to_f64();
            let b = main_term(&p(2.0, 1.0), 2.0 * x).unwrap().to_f64();
            let f = b / a;
            assert!(f > 2.0 && f <= 2.0 + 2.0 / x.ln(), "x={x}: {f}");
        }
    }

    #[test]
    fn linear_case() {
        let c2 = series_constant(2.0, 1e-12).unwrap();
        let v = main_term(&p(1.0, 1.0), 1e6).unwrap();
        assert!((v.to_f64() - c2.to_f64() * 1e6).abs() <= 1e-9);
        let spec = MainTermSpec::new(&p(1.0, 1.5)).unwrap();
        assert_eq!(spec.case, MainTermCase::Linear);
        assert_eq!(spec.theta, Some(9.0 / 41.0));
        let c = spec.constant.unwrap().to_f64();
        assert!(c > 0.0 && c < zeta(1.5).unwrap().to_f64() / zeta(2.5).unwrap().to_f64());
    }

    #[test]
    fn case_rules() {
        assert_eq!(
            MainTermSpec::new(&p(3.0, 1.0)).unwrap().case,
            MainTermCase::None
        );
        assert_eq!(
            MainTermSpec::new(&p(4.5, 1.0)).unwrap().case,
            MainTermCase::None
        );
        for (j, k) in [(1.5, 1.0), (2.5, 1.0), (1.75, 0.0)] {
            assert!(MainTermSpec::new(&p(j, k)).is_err(), "j={j} k={k}");
            assert!(main_term(&p(j, k), 100.0).is_err());
        }
        assert!(main_term(&p(3.0, 1.0), 100.0).is_err());
        assert!(main_term(&p(1.0, 1.0), 0.5).is_err());
    }
}
