//! The floor-sum `S_{j,k}(x) = Σ_{n≤x} φ([x/n])·[x/n]^{c−1}`, `c = j − k`,
//! evaluated three independent ways:
//!
//! * [`s_naive`] visits every `n ≤ x`;
//! * [`s_block`] visits each maximal run of equal `[x/n]` once;
//! * [`s_hybrid`] evaluates `φ([x/n])` pointwise for `n ≤ √x` and uses
//!   block counts with a sieve of size `√x` for the rest, so it never
//!   needs a table of length `x`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::numeric::{checked_pow_u128, pow_big, ExactSum, NeumaierSum};
use crate::sieve::{phi_point, sieve_phi_with, PHI_POINT_MAX};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Big-integer accumulation; the result carries no error.
    Exact,
    /// Compensated floating-point accumulation with an error certificate.
    Float,
}

/// Exponents `(j, k)` of the floor-sum. Only `c = j − k` enters the
/// reduced summand `φ(m)·m^{c−1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumParams {
    j: f64,
    k: f64,
    c: f64,
    mode: Mode,
}

impl SumParams {
    pub fn new(j: f64, k: f64) -> Result<Self> {
        if !(j.is_finite() && k.is_finite()) || j < 1.0 || k < 0.0 {
            return Err(Error::domain(format!(
                "exponents must satisfy j >= 1, k >= 0 (got j={j}, k={k})"
            )));
        }
        let c = j - k;
        let mode = if c.fract() == 0.0 && c >= 1.0 {
            Mode::Exact
        } else {
            Mode::Float
        };
        Ok(SumParams { j, k, c, mode })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The reduced exponent `j − k`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigInt),
    Float(f64),
}

impl fmt::Display for Value {
    /// Exact values print in full; floats with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v:.16e}"),
        }
    }
}

/// A value with a rigorous bound on its absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedValue {
    pub value: Value,
    pub abs_error: f64,
    /// Summands processed to produce the value.
    pub terms: u64,
}

impl CertifiedValue {
    pub fn exact(v: impl Into<BigInt>, terms: u64) -> Self {
        CertifiedValue {
            value: Value::Exact(v.into()),
            abs_error: 0.0,
            terms,
        }
    }

    pub fn float(v: f64, abs_error: f64, terms: u64) -> Self {
        CertifiedValue {
            value: Value::Float(v),
            abs_error,
            terms,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, Value::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Exact(v) => Some(v),
            Value::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.value {
            Value::Exact(v) => v.to_f64().unwrap_or(f64::INFINITY),
            Value::Float(v) => *v,
        }
    }

    /// Rounding error incurred by [`to_f64`](Self::to_f64) plus the
    /// certificate.
    pub fn f64_error(&self) -> f64 {
        match &self.value {
            Value::Exact(_) => self.to_f64().abs() * crate::numeric::UNIT_ROUNDOFF,
            Value::Float(_) => self.abs_error,
        }
    }

    /// Exact values must be equal; float values must differ by no more
    /// than the sum of both certificates.
    pub fn agrees_with(&self, other: &CertifiedValue) -> bool {
        match (&self.value, &other.value) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => (a - b).abs() <= self.abs_error + other.abs_error,
            _ => false,
        }
    }
}

/// A maximal run `n_lo ≤ n ≤ n_hi` on which `[x/n] = m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorBlock {
    pub m: u64,
    pub n_lo: u64,
    pub n_hi: u64,
}

impl FloorBlock {
    pub fn len(&self) -> u64 {
        self.n_hi - self.n_lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Iterator over the floor blocks of `x`, in decreasing `m`.
#[derive(Debug, Clone)]
pub struct FloorBlocks {
    x: u64,
    next: u64,
}

impl Iterator for FloorBlocks {
    type Item = FloorBlock;

    fn next(&mut self) -> Option<FloorBlock> {
        if self.next == 0 || self.next > self.x {
            return None;
        }
        let n_lo = self.next;
        let m = self.x / n_lo;
        let n_hi = self.x / m;
        self.next = n_hi.checked_add(1).unwrap_or(0);
        Some(FloorBlock { m, n_lo, n_hi })
    }
}

/// Partitions `[1, x]` into the `O(√x)` runs of constant `[x/n]`.
pub fn floor_blocks(x: u64) -> FloorBlocks {
    FloorBlocks { x, next: 1 }
}

/// How to turn `(φ(m), m, count)` into a float summand.
#[derive(Debug, Clone, Copy)]
struct FloatTerm {
    exponent: f64,
    int_exponent: Option<i32>,
}

impl FloatTerm {
    fn new(exponent: f64) -> Self {
        let int_exponent = (exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64)
            .then_some(exponent as i32);
        FloatTerm {
            exponent,
            int_exponent,
        }
    }

    #[inline]
    fn power(&self, m: u64) -> f64 {
        match self.int_exponent {
            Some(e) => (m as f64).powi(e),
            None => (m as f64).powf(self.exponent),
        }
    }

    /// Relative error bound on one computed summand `φ·m^e·count`.
    fn rel_error(&self) -> f64 {
        let pow_err = match self.int_exponent {
            Some(e) => e.unsigned_abs() as f64 + 1.0,
            None => 2.0,
        };
        (pow_err + 4.0) * f64::EPSILON
    }
}

/// Accumulator for `Σ coeff·m^e·count` in either mode.
#[derive(Debug, Clone)]
enum Accumulator {
    Exact { sum: ExactSum, exponent: u32 },
    Float { sum: NeumaierSum, term: FloatTerm },
}

impl Accumulator {
    fn for_exponent(exponent: f64, exact: bool) -> Self {
        if exact {
            Accumulator::Exact {
                sum: ExactSum::new(),
                exponent: exponent as u32,
            }
        } else {
            let term = FloatTerm::new(exponent);
            Accumulator::Float {
                sum: NeumaierSum::new(term.rel_error()),
                term,
            }
        }
    }

    fn for_params(params: &SumParams) -> Self {
        Self::for_exponent(params.c - 1.0, params.mode == Mode::Exact)
    }

    #[inline]
    fn add(&mut self, coeff: u64, m: u64, count: u64) {
        match self {
            Accumulator::Exact { sum, exponent } => match checked_pow_u128(m, *exponent) {
                Some(p) => sum.add_product(coeff as u128, p, count as u128),
                None => {
                    let v = pow_big(m, *exponent) * BigUint::from(coeff) * BigUint::from(count);
                    sum.add_big(&v);
                }
            },
            Accumulator::Float { sum, term } => {
                sum.add(coeff as f64 * term.power(m) * count as f64);
            }
        }
    }

    fn merge(&mut self, other: &Accumulator) {
        match (self, other) {
            (Accumulator::Exact { sum: a, .. }, Accumulator::Exact { sum: b, .. }) => a.merge(b),
            (Accumulator::Float { sum: a, .. }, Accumulator::Float { sum: b, .. }) => a.merge(b),
            _ => unreachable!("accumulators of one evaluation share a mode"),
        }
    }

    fn finish(self) -> CertifiedValue {
        match self {
            Accumulator::Exact { sum, .. } => {
                CertifiedValue::exact(BigInt::from(sum.value()), sum.terms())
            }
            Accumulator::Float { sum, .. } => {
                CertifiedValue::float(sum.value(), sum.certificate(), sum.terms())
            }
        }
    }
}

/// Floor-sum evaluators bound to a set of resource limits.
#[derive(Debug, Clone, Copy, Default)]
pub struct FloorSum {
    limits: Limits,
}

// Pointwise work in the hybrid evaluator is split into chunks of this many
// `n` regardless of thread count, so float results do not depend on it.
const HYBRID_CHUNK: u64 = 1024;

impl FloorSum {
    pub fn new(limits: Limits) -> Self {
        FloorSum { limits }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn naive(&self, params: &SumParams, x: u64) -> Result<CertifiedValue> {
        check_x(x)?;
        if x > self.limits.naive_max_x {
            return Err(Error::Capacity {
                what: "linear-time evaluator",
                needed: x,
                cap: self.limits.naive_max_x,
            });
        }
        let phi = sieve_phi_with(x, &self.limits)?;
        let phi = phi.values();
        let mut acc = Accumulator::for_params(params);
        for n in 1..=x {
            let m = x / n;
            acc.add(phi[(m - 1) as usize] as u64, m, 1);
        }
        Ok(acc.finish())
    }

    pub fn block(&self, params: &SumParams, x: u64) -> Result<CertifiedValue> {
        check_x(x)?;
        let phi = sieve_phi_with(x, &self.limits)?;
        let phi = phi.values();
        let mut acc = Accumulator::for_params(params);
        for b in floor_blocks(x) {
            acc.add(phi[(b.m - 1) as usize] as u64, b.m, b.len());
        }
        Ok(acc.finish())
    }

    pub fn hybrid(&self, params: &SumParams, x: u64) -> Result<CertifiedValue> {
        check_x(x)?;
        if x > PHI_POINT_MAX {
            return Err(Error::domain(format!(
                "hybrid evaluator requires x <= 2^63-1, got {x}"
            )));
        }
        let k = x.isqrt();
        // n ≤ K, one term per n with φ([x/n]) by factorization.
        let chunks: Vec<(u64, u64)> = (0..k.div_ceil(HYBRID_CHUNK))
            .map(|c| (c * HYBRID_CHUNK + 1, ((c + 1) * HYBRID_CHUNK).min(k)))
            .collect();
        let partials: Vec<Accumulator> = chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut acc = Accumulator::for_params(params);
                for n in lo..=hi {
                    let m = x / n;
                    let phi = phi_point(m).expect("m <= x <= 2^63-1");
                    acc.add(phi, m, 1);
                }
                acc
            })
            .collect();
        // m ≤ x/(K+1): every n with [x/n] = m exceeds K, so whole blocks
        // are counted without overlapping the pointwise range.
        let m_max = x / (k + 1);
        let mut acc = Accumulator::for_params(params);
        if m_max > 0 {
            let phi = sieve_phi_with(m_max, &self.limits)?;
            for (i, &p) in phi.values().iter().enumerate() {
                let m = i as u64 + 1;
                acc.add(p as u64, m, x / m - x / (m + 1));
            }
        }
        let mut total = Accumulator::for_params(params);
        for p in &partials {
            total.merge(p);
        }
        total.merge(&acc);
        Ok(total.finish())
    }

    /// `Σ_{n≤x} [x/n]^c`, exact for integer `c`.
    pub fn floor_powers(&self, x: u64, c: f64) -> Result<CertifiedValue> {
        check_x(x)?;
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::domain(format!(
                "floor-power exponent must be >= 0, got {c}"
            )));
        }
        let mut acc = Accumulator::for_exponent(c, c.fract() == 0.0);
        for b in floor_blocks(x) {
            acc.add(1, b.m, b.len());
        }
        Ok(acc.finish())
    }
}

fn check_x(x: u64) -> Result<()> {
    if x == 0 {
        return Err(Error::domain("x must be >= 1"));
    }
    Ok(())
}

/// Term-by-term evaluation over every `n ≤ x`.
pub fn s_naive(params: &SumParams, x: u64) -> Result<CertifiedValue> {
    FloorSum::default().naive(params, x)
}

/// Block evaluation with a full sieve up to `x`.
pub fn s_block(params: &SumParams, x: u64) -> Result<CertifiedValue> {
    FloorSum::default().block(params, x)
}

/// Split evaluation with `O(√x)` memory.
pub fn s_hybrid(params: &SumParams, x: u64) -> Result<CertifiedValue> {
    FloorSum::default().hybrid(params, x)
}

/// `Σ_{n≤x} [x/n]^c` over the floor blocks of `x`.
pub fn sum_of_floor_powers(x: u64, c: f64) -> Result<CertifiedValue> {
    FloorSum::default().floor_powers(x, c)
}
