//! The main-term constant `C(c′) = Σ_{n≥1} φ(n) / (n^{c′}(n+1))`.
//!
//! Direct summation converges like `N^{2−c′}`, far too slowly at `c′ = 2`.
//! Expanding
//!
//! ```text
//! 1/(n+1) = Σ_{r<R} (−1)^r / n^{r+1} + (−1)^R / (n^R (n+1))
//! ```
//!
//! turns the tail beyond `N` into sums `Σ_{n>N} φ(n)/n^s` with `s > 2`,
//! each of which is `ζ(s−1)/ζ(s)` minus a partial sum. What is left is
//! bounded by `N^{1−c′−R}/(c′+R−1)`.

use crate::numeric::{NeumaierSum, UNIT_ROUNDOFF};
use crate::sieve::sieve_phi;
use crate::{CertifiedValue, Error, Result};

use super::zeta;

pub const DEFAULT_TERMS: u64 = 1_000_000;
pub const DEFAULT_EXPANSION: u32 = 3;

/// `C(c′)` with certified absolute error at most `eps`, using the default
/// truncation parameters.
pub fn series_constant(c_prime: f64, eps: f64) -> Result<CertifiedValue> {
    let v = series_constant_with(c_prime, DEFAULT_TERMS, DEFAULT_EXPANSION)?;
    if v.abs_error.is_nan() || v.abs_error > eps {
        return Err(Error::Precision {
            target: eps,
            achieved: v.abs_error,
        });
    }
    Ok(v)
}

/// `C(c′)` from a direct sum over `n ≤ terms` and an `expansion`-term
/// accelerated tail.
pub fn series_constant_with(c_prime: f64, terms: u64, expansion: u32) -> Result<CertifiedValue> {
    if !(c_prime.is_finite() && c_prime >= 2.0) {
        return Err(Error::domain(format!(
            "series constant requires c' >= 2, got {c_prime}"
        )));
    }
    if terms == 0 || expansion == 0 {
        return Err(Error::domain(
            "series constant needs at least one term and one expansion order",
        ));
    }
    let phi = sieve_phi(terms)?;
    let r = expansion as usize;

    // partial[r] = Σ_{n≤N} φ(n)/n^{c′+r+1}; powers of 1/n are built by
    // repeated division, one extra rounding per order.
    let mut direct = NeumaierSum::new(6.0 * f64::EPSILON);
    let mut partial: Vec<NeumaierSum> = (0..r)
        .map(|i| NeumaierSum::new((6.0 + i as f64) * f64::EPSILON))
        .collect();
    for (i, &p) in phi.values().iter().enumerate().rev() {
        let n = (i + 1) as f64;
        let base = p as f64 * n.powf(-c_prime);
        direct.add(base / (n + 1.0));
        let mut t = base;
        for s in partial.iter_mut() {
            t /= n;
            s.add(t);
        }
    }

    let mut total = NeumaierSum::new(0.0);
    total.add(direct.value());
    let mut err = direct.certificate();
    for (i, part) in partial.iter().enumerate() {
        let s = c_prime + i as f64 + 1.0;
        let (num, den) = (zeta(s - 1.0)?, zeta(s)?);
        let q = num.to_f64() / den.to_f64();
        let q_err = (num.abs_error + q.abs() * den.abs_error) / (den.to_f64() - den.abs_error)
            + UNIT_ROUNDOFF * q.abs();
        let tail = q - part.value();
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        total.add(sign * tail);
        err += q_err + part.certificate() + UNIT_ROUNDOFF * tail.abs();
    }
    let remainder =
        (terms as f64).powf(1.0 - c_prime - expansion as f64) / (c_prime + expansion as f64 - 1.0);
    let value = total.value();
    err += remainder + total.certificate() + 2.0 * UNIT_ROUNDOFF * value.abs();
    Ok(CertifiedValue::float(value, err, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_values() {
        // Cross-checked with a 30-digit evaluation of the same expansion.
        let cases = [
            (2.0, 0.788_385_435_416_730_6),
            (2.5, 0.642_196_315_674_214_3),
            (3.0, 0.580_047_342_203_476_5),
            (4.0, 0.530_579_193_122_672_7),
        ];
        for (c, want) in cases {
            let v = series_constant(c, 1e-13).unwrap();
            assert!(
                (v.to_f64() - want).abs() <= v.abs_error + 1e-16,
                "c'={c}: {}",
                v.to_f64()
            );
        }
        // Three decimals at c′ = 2.
        assert_eq!(
            (series_constant(2.0, 1e-13).unwrap().to_f64() * 1000.0).round(),
            788.0
        );
    }

    #[test]
    fn dominated_by_first_term_for_large_exponent() {
        for c in [10.0, 20.0, 40.0] {
            let v = series_constant_with(c, 1000, 3).unwrap().to_f64();
            let bound: f64 = (2..2000).map(|n| (n as f64).powf(1.0 - c)).sum();
            assert!(v > 0.5 && v - 0.5 <= bound * 1.0001, "c'={c}");
        }
    }

    #[test]
    fn below_ratio_of_zetas() {
        // At c′ = 2 the bound ζ(1)/ζ(2) is infinite.
        for c in [2.5, 3.0, 5.0] {
            let v = series_constant_with(c, 10_000, 3).unwrap().to_f64();
            let ratio = zeta(c - 1.0).unwrap().to_f64() / zeta(c).unwrap().to_f64();
            assert!(v > 0.0 && v < ratio);
        }
    }

    #[test]
    fn certificates_nest() {
        for c in [2.0, 2.5, 3.0] {
            let coarse = series_constant_with(c, 10_000, 3).unwrap();
            let fine = series_constant_with(c, 100_000, 4).unwrap();
            assert!(
                (coarse.to_f64() - fine.to_f64()).abs() <= coarse.abs_error,
                "c'={c}"
            );
            assert!(fine.abs_error < 1e-13);
        }
    }

    #[test]
    fn tenfold_terms_within_certificate() {
        let a = series_constant_with(2.0, 10_000, 2).unwrap();
        let b = series_constant_with(2.0, 100_000, 2).unwrap();
        assert!((a.to_f64() - b.to_f64()).abs() <= a.abs_error);
    }

    #[test]
    fn errors() {
        assert!(matches!(series_constant(1.5, 1e-10), Err(Error::Domain(_))));
        assert!(matches!(
            series_constant(2.0, 1e-30),
            Err(Error::Precision { .. })
        ));
        assert!(series_constant_with(2.0, 0, 3).is_err());
    }
}
