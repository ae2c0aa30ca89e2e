//! Accumulators: compensated floating-point sums with a rounding
//! certificate, and exact unsigned sums that spill into big integers.

use num_bigint::BigUint;

/// Unit roundoff of `f64`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Neumaier (improved Kahan–Babuška) summation that also tracks what is
/// needed to bound its own error.
///
/// Each added term may carry a relative error of at most `term_rel_err`
/// from the way it was computed. The certificate then covers both that and
/// the rounding of the compensated summation itself:
///
/// ```text
/// |ŝ − s| ≤ ρ·Σ|tᵢ| + 2u·|ŝ| + 4(n+1)u²·Σ|tᵢ|
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    terms: u64,
    term_rel_err: f64,
}

impl NeumaierSum {
    pub fn new(term_rel_err: f64) -> Self {
        NeumaierSum {
            sum: 0.0,
            comp: 0.0,
            abs_sum: 0.0,
            terms: 0,
            term_rel_err,
        }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += v.abs();
        self.terms += 1;
    }

    /// Folds a partial sum computed elsewhere into this one. Merging is
    /// order-sensitive only through rounding; callers that need
    /// reproducible results merge in a fixed order.
    pub fn merge(&mut self, other: &NeumaierSum) {
        let (abs, n) = (self.abs_sum + other.abs_sum, self.terms + other.terms);
        self.add(other.sum);
        self.add(other.comp);
        self.abs_sum = abs;
        self.terms = n + 2;
        self.term_rel_err = self.term_rel_err.max(other.term_rel_err);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub fn certificate(&self) -> f64 {
        let u = UNIT_ROUNDOFF;
        let n = self.terms as f64;
        // abs_sum was itself accumulated with rounding.
        let a = self.abs_sum * (1.0 + 2.0 * (n + 1.0) * u);
        self.term_rel_err * a + 2.0 * u * self.value().abs() + 4.0 * (n + 1.0) * u * u * a
    }
}

impl Default for NeumaierSum {
    fn default() -> Self {
        NeumaierSum::new(0.0)
    }
}

/// Exact sum of non-negative integers. Terms accumulate in a `u128` and
/// spill into a [`BigUint`] when that would overflow.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactSum {
    low: u128,
    spill: BigUint,
    terms: u64,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add_u128(&mut self, v: u128) {
        self.terms += 1;
        match self.low.checked_add(v) {
            Some(s) => self.low = s,
            None => {
                self.spill += BigUint::from(self.low);
                self.low = v;
            }
        }
    }

    pub fn add_big(&mut self, v: &BigUint) {
        self.terms += 1;
        self.spill += v;
    }

    /// Adds `a·b·c`, falling back to big-integer multiplication on
    /// overflow.
    #[inline]
    pub fn add_product(&mut self, a: u128, b: u128, c: u128) {
        match a.checked_mul(b).and_then(|ab| ab.checked_mul(c)) {
            Some(p) => self.add_u128(p),
            None => {
                let p = BigUint::from(a) * BigUint::from(b) * BigUint::from(c);
                self.add_big(&p);
            }
        }
    }

    pub fn merge(&mut self, other: &ExactSum) {
        let terms = self.terms + other.terms;
        self.add_u128(other.low);
        self.spill += &other.spill;
        self.terms = terms;
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn value(&self) -> BigUint {
        &self.spill + BigUint::from(self.low)
    }
}

/// Exact `base^exp` as a big integer.
pub fn pow_big(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// `base^exp` in `u128`, or `None` on overflow.
pub fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}
