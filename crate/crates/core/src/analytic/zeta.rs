use crate::numeric::{NeumaierSum, UNIT_ROUNDOFF};
use crate::{CertifiedValue, Error, Result};

/// Bernoulli numbers B_2, B_4, …, B_18.
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

/// Correction terms used; the next Bernoulli term bounds the remainder.
const CORRECTIONS: usize = 8;
const DIRECT_TERMS: u64 = 32;

/// ζ(s) for real `s > 1`:
///
/// ```text
/// ζ(s) = Σ_{n<N} n^{−s} + N^{1−s}/(s−1) + N^{−s}/2
///        + Σ_{k=1}^{8} B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1} + R
/// ```
///
/// For real `s` the remainder is bounded by the first omitted correction
/// term. The certificate adds rounding of the direct sum and corrections.
pub fn zeta(s: f64) -> Result<CertifiedValue> {
    if !(s.is_finite() && s > 1.0) {
        return Err(Error::domain(format!("zeta requires s > 1, got {s}")));
    }
    let n = DIRECT_TERMS as f64;
    let mut sum = NeumaierSum::new(2.0 * f64::EPSILON);
    for i in (1..DIRECT_TERMS).rev() {
        sum.add((i as f64).powf(-s));
    }
    let n_pow = n.powf(-s);
    sum.add(n * n_pow / (s - 1.0));
    sum.add(n_pow / 2.0);

    // rising = s(s+1)…(s+2k−2), fact = (2k)!, n_k = N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut n_k = n_pow / n;
    let correction =
        |k: usize, rising: f64, fact: f64, n_k: f64| BERNOULLI[k - 1] / fact * rising * n_k;
    for k in 1..=CORRECTIONS {
        sum.add(correction(k, rising, fact, n_k));
        let (a, b) = ((2 * k) as f64, (2 * k + 1) as f64);
        rising *= (s + a - 1.0) * (s + a);
        fact *= b * (b + 1.0);
        n_k /= n * n;
    }
    let remainder = correction(CORRECTIONS + 1, rising, fact, n_k).abs();
    let value = sum.value();
    // Corrections carry a few more roundings than the direct terms.
    let rounding = sum.certificate() + 16.0 * UNIT_ROUNDOFF * value.abs();
    Ok(CertifiedValue::float(
        value,
        remainder + rounding,
        DIRECT_TERMS + CORRECTIONS as u64 + 1,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(s: f64, want: f64) {
        let z = zeta(s).unwrap();
        assert!(
            (z.to_f64() - want).abs() <= z.abs_error,
            "s={s}: {} vs {want}",
            z.to_f64()
        );
        assert!(z.abs_error <= 1e-14, "s={s}: certificate {}", z.abs_error);
    }

    #[test]
    fn closed_forms() {
        close(2.0, PI * PI / 6.0);
        close(4.0, PI.powi(4) / 90.0);
        close(6.0, PI.powi(6) / 945.0);
    }

    #[test]
    fn zeta_three_by_direct_series() {
        // Σ_{n≤N} n^{-3} plus the tail bracket 1/(2(N+1)^2) < tail < 1/(2N^2).
        let n = 200_000u64;
        let mut s = NeumaierSum::new(2.0 * f64::EPSILON);
        for i in (1..=n).rev() {
            s.add((i as f64).powi(-3));
        }
        let lo = s.value() + 1.0 / (2.0 * ((n + 1) as f64).powi(2));
        let hi = s.value() + 1.0 / (2.0 * (n as f64).powi(2));
        let z = zeta(3.0).unwrap().to_f64();
        assert!(z >= lo - 1e-15 && z <= hi + 1e-15);
        assert!((z - 1.202_056_903_16).abs() < 1e-11);
    }

    #[test]
    fn near_one_and_large_s() {
        // ζ(s) = 1/(s−1) + γ + O(s−1)
        let z = zeta(1.05).unwrap();
        assert!((z.to_f64() - (20.0 + 0.5772)).abs() < 0.01);
        // Relative accuracy near the pole; absolute certificate scales with ζ.
        assert!(z.abs_error / z.to_f64() < 1e-14);
        close(1.5, 2.612_375_348_685_488);
        let big = zeta(60.0).unwrap();
        assert!((big.to_f64() - 1.0).abs() < 1e-17 + big.abs_error);
    }

    #[test]
    fn domain() {
        assert!(zeta(1.0).is_err());
        assert!(zeta(0.5).is_err());
        assert!(zeta(f64::NAN).is_err());
    }
}
