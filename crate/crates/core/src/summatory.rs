//! Sub-linear summatory totient Φ(N) = Σ_{n≤N} φ(n) and Mertens
//! M(N) = Σ_{n≤N} μ(n).
//!
//! Both follow from Dirichlet convolution with the constant function:
//!
//! ```text
//! Σ_{d≤N} Φ(⌊N/d⌋) = N(N+1)/2        Σ_{d≤N} M(⌊N/d⌋) = 1
//! ```
//!
//! Values below a sieve threshold come from a prefix-summed table; values
//! above it are memoized per quotient `⌊N/i⌋` of the root argument.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::sieve::{sieve_mu_with, sieve_phi_with};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummatoryKind {
    Totient,
    Mertens,
}

/// Exact values of Φ or M over the floor-division set of one root.
#[derive(Debug, Clone)]
pub struct SummatoryCache {
    root: u64,
    kind: SummatoryKind,
    /// `small[v]` is the prefix sum at `v`, for `v ≤ threshold`.
    small: Vec<i64>,
    large: HashMap<u64, i128>,
}

impl SummatoryCache {
    pub fn new(kind: SummatoryKind, root: u64) -> Result<Self> {
        Self::with_limits(kind, root, &Limits::default())
    }

    pub fn with_limits(kind: SummatoryKind, root: u64, limits: &Limits) -> Result<Self> {
        if root == 0 {
            return Err(Error::domain("summatory root must be >= 1"));
        }
        let threshold = (root as f64).powf(2.0 / 3.0).ceil() as u64;
        let threshold = threshold
            .clamp(1, root)
            .min(limits.max_entries().saturating_sub(1));
        let table = match kind {
            SummatoryKind::Totient => sieve_phi_with(threshold, limits)?,
            SummatoryKind::Mertens => sieve_mu_with(threshold, limits)?,
        };
        let mut small = Vec::with_capacity(table.len() + 1);
        small.push(0);
        let mut acc = 0i64;
        for v in table.into_values() {
            acc += v;
            small.push(acc);
        }
        Ok(SummatoryCache {
            root,
            kind,
            small,
            large: HashMap::new(),
        })
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn kind(&self) -> SummatoryKind {
        self.kind
    }

    pub fn threshold(&self) -> u64 {
        self.small.len() as u64 - 1
    }

    /// Number of memoized quotients above the threshold.
    pub fn memoized(&self) -> usize {
        self.large.len()
    }

    /// Stored quotients above the sieve threshold, with their values.
    pub fn large_entries(&self) -> impl Iterator<Item = (u64, i128)> + '_ {
        self.large.iter().map(|(&k, &v)| (k, v))
    }

    fn is_quotient(&self, v: u64) -> bool {
        v >= 1 && v <= self.root && self.root / (self.root / v) == v
    }

    /// Prefix sum at `v`. Arguments above the threshold must belong to the
    /// root's floor-division set.
    pub fn get(&mut self, v: u64) -> Result<i128> {
        if v <= self.threshold() {
            return Ok(self.small[v as usize] as i128);
        }
        if !self.is_quotient(v) {
            return Err(Error::domain(format!(
                "{v} is not of the form floor({}/i)",
                self.root
            )));
        }
        Ok(self.eval(v))
    }

    fn eval(&mut self, v: u64) -> i128 {
        if v <= self.threshold() {
            return self.small[v as usize] as i128;
        }
        if let Some(&r) = self.large.get(&v) {
            return r;
        }
        let mut acc: i128 = match self.kind {
            SummatoryKind::Totient => v as i128 * (v as i128 + 1) / 2,
            SummatoryKind::Mertens => 1,
        };
        let mut d = 2u64;
        while d <= v {
            let q = v / d;
            let d_end = v / q;
            acc -= (d_end - d + 1) as i128 * self.eval(q);
            d = d_end + 1;
        }
        self.large.insert(v, acc);
        acc
    }
}

fn expect_kind(cache: &SummatoryCache, kind: SummatoryKind) -> Result<()> {
    if cache.kind != kind {
        return Err(Error::domain(format!(
            "cache holds {:?} values, {:?} requested",
            cache.kind, kind
        )));
    }
    Ok(())
}

/// Exact Φ(n), with `n` either below the cache's threshold or a quotient
/// of its root.
pub fn totient_summatory(n: u64, cache: &mut SummatoryCache) -> Result<BigUint> {
    expect_kind(cache, SummatoryKind::Totient)?;
    let v = cache.get(n)?;
    Ok(BigUint::try_from(v).expect("summatory totient is positive"))
}

/// Exact M(n), under the same argument rules as [`totient_summatory`].
pub fn mertens(n: u64, cache: &mut SummatoryCache) -> Result<i64> {
    expect_kind(cache, SummatoryKind::Mertens)?;
    Ok(cache.get(n)? as i64)
}

/// Φ(n) with a fresh cache rooted at `n`.
pub fn totient_summatory_of(n: u64) -> Result<BigUint> {
    totient_summatory(n, &mut SummatoryCache::new(SummatoryKind::Totient, n)?)
}

/// M(n) with a fresh cache rooted at `n`.
pub fn mertens_of(n: u64) -> Result<i64> {
    mertens(n, &mut SummatoryCache::new(SummatoryKind::Mertens, n)?)
}

/// Φ(N) / (3N²/π²).
pub fn walfisz_ratio(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("walfisz_ratio requires N >= 2"));
    }
    let phi = totient_summatory_of(n)?;
    let phi = num_traits::ToPrimitive::to_f64(&phi).expect("finite");
    let nf = n as f64;
    Ok(phi / (3.0 * nf * nf / (std::f64::consts::PI * std::f64::consts::PI)))
}
