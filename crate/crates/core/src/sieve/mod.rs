//! Tables of φ and μ over integer ranges, and φ at isolated large
//! arguments.

mod factor;

pub use factor::{factorize, is_prime, phi_point, PHI_POINT_MAX};

use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Totient,
    Moebius,
}

/// Values of φ or μ over the contiguous range `[lo, lo + len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithTable {
    lo: u64,
    values: Vec<i64>,
    kind: TableKind,
}

impl ArithTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    /// Last argument covered (inclusive).
    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at argument `n`; panics outside the covered range.
    #[inline]
    pub fn at(&self, n: u64) -> i64 {
        self.values[(n - self.lo) as usize]
    }

    pub fn get(&self, n: u64) -> Option<i64> {
        n.checked_sub(self.lo)
            .and_then(|i| self.values.get(i as usize))
            .copied()
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }
}

/// φ(n) for every n in `[1, n_max]`.
pub fn sieve_phi(n_max: u64) -> Result<ArithTable> {
    sieve_phi_with(n_max, &Limits::default())
}

pub fn sieve_phi_with(n_max: u64, limits: &Limits) -> Result<ArithTable> {
    if n_max == 0 {
        return Err(Error::domain("sieve_phi requires N >= 1"));
    }
    limits.check_entries("totient table", n_max + 1)?;
    let n = n_max as usize;
    // phi[i] == 0 marks "not yet reached", i.e. i is prime when visited.
    let mut phi = vec![0i64; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    phi[1] = 1;
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = i as i64 - 1;
            primes.push(i);
        }
        let pi = phi[i];
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                phi[ip] = pi * p as i64;
                break;
            }
            phi[ip] = pi * (p as i64 - 1);
        }
    }
    phi.remove(0);
    Ok(ArithTable {
        lo: 1,
        values: phi,
        kind: TableKind::Totient,
    })
}

/// μ(n) for every n in `[1, n_max]`.
pub fn sieve_mu(n_max: u64) -> Result<ArithTable> {
    sieve_mu_with(n_max, &Limits::default())
}

pub fn sieve_mu_with(n_max: u64, limits: &Limits) -> Result<ArithTable> {
    if n_max == 0 {
        return Err(Error::domain("sieve_mu requires N >= 1"));
    }
    limits.check_entries("moebius table", n_max + 1)?;
    let n = n_max as usize;
    let mut mu = vec![1i64; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            mu[i] = -1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu.remove(0);
    Ok(ArithTable {
        lo: 1,
        values: mu,
        kind: TableKind::Moebius,
    })
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// φ(n) for every n in `[lo, hi]`, sieving in segments of
/// `limits.segment_len` entries with primes up to √hi.
pub fn segment_phi(lo: u64, hi: u64) -> Result<ArithTable> {
    segment_phi_with(lo, hi, &Limits::default())
}

pub fn segment_phi_with(lo: u64, hi: u64, limits: &Limits) -> Result<ArithTable> {
    if lo == 0 || lo > hi {
        return Err(Error::domain(format!(
            "segment_phi requires 1 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    limits.check_entries("totient segment", hi - lo + 1)?;
    let primes = primes_up_to(hi.isqrt());
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    let seg = limits.segment_len.max(1) as u64;
    let mut rest: Vec<u64> = Vec::with_capacity(seg.min(hi - lo + 1) as usize);
    let mut start = lo;
    loop {
        let end = hi.min(start.saturating_add(seg - 1));
        let base = values.len();
        rest.clear();
        rest.extend(start..=end);
        values.extend((start..=end).map(|n| n as i64));
        for &p in &primes {
            if p * p > end {
                break;
            }
            let first = start.div_ceil(p) * p;
            let mut m = first;
            while m <= end {
                let i = (m - start) as usize;
                let v = &mut values[base + i];
                *v -= *v / p as i64;
                let r = &mut rest[i];
                while r.is_multiple_of(p) {
                    *r /= p;
                }
                m += p;
            }
        }
        // At most one prime factor above √end remains.
        for (i, &r) in rest.iter().enumerate() {
            if r > 1 {
                let v = &mut values[base + i];
                *v -= *v / r as i64;
            }
        }
        if end == hi {
            break;
        }
        start = end + 1;
    }
    Ok(ArithTable {
        lo,
        values,
        kind: TableKind::Totient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    /// Direct count of 1 ≤ d ≤ n with gcd(d, n) = 1.
    fn phi_by_count(n: u64) -> i64 {
        (1..=n).filter(|&d| gcd(d, n) == 1).count() as i64
    }

    /// μ from trial-division factorization.
    fn mu_by_factoring(mut n: u64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn phi_small_tables() {
        assert_eq!(sieve_phi(1).unwrap().values(), &[1]);
        let t = sieve_phi(10).unwrap();
        let expected: Vec<i64> = (1..=10).map(phi_by_count).collect();
        assert_eq!(expected, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        assert_eq!(t.values(), &expected[..]);
        assert_eq!(sieve_phi(97).unwrap().at(97), 96);
    }

    #[test]
    fn phi_matches_counting_oracle() {
        let t = sieve_phi(2000).unwrap();
        for n in 1..=2000 {
            assert_eq!(t.at(n), phi_by_count(n), "n={n}");
        }
    }

    #[test]
    fn mu_small_tables() {
        assert_eq!(sieve_mu(1).unwrap().values(), &[1]);
        assert_eq!(sieve_mu(4).unwrap().values(), &[1, -1, -1, 0]);
        assert_eq!(sieve_mu(30).unwrap().at(30), -1);
        let t = sieve_mu(5000).unwrap();
        for n in 1..=5000 {
            assert_eq!(t.at(n), mu_by_factoring(n), "n={n}");
        }
    }

    #[test]
    fn segments() {
        assert_eq!(segment_phi(1, 10).unwrap(), sieve_phi(10).unwrap());
        assert_eq!(segment_phi(10, 12).unwrap().values(), &[4, 10, 4]);
        let single = segment_phi(97, 97).unwrap();
        assert_eq!((single.len(), single.at(97)), (1, 96));
        assert!(matches!(segment_phi(5, 4), Err(Error::Domain(_))));
        assert!(matches!(segment_phi(0, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn segment_boundaries_with_tiny_segments() {
        let limits = Limits {
            segment_len: 7,
            ..Limits::default()
        };
        let full = sieve_phi(3000).unwrap();
        let seg = segment_phi_with(1234, 3000, &limits).unwrap();
        assert_eq!(seg.values(), &full.values()[1233..]);
    }

    #[test]
    fn segment_agrees_with_full_sieve() {
        let full = sieve_phi(100_000).unwrap();
        let pairs = [
            (1, 100_000),
            (2, 3),
            (99_990, 100_000),
            (31_607, 65_536),
            (50_000, 50_001),
        ];
        for (lo, hi) in pairs {
            let seg = segment_phi(lo, hi).unwrap();
            assert_eq!(seg.values(), &full.values()[(lo - 1) as usize..hi as usize]);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let limits = Limits::default().with_memory_cap(1 << 24).unwrap();
        assert!(matches!(
            sieve_phi_with(1 << 22, &limits),
            Err(Error::Capacity { .. })
        ));
        assert!(sieve_phi_with(1 << 20, &limits).is_ok());
        assert!(matches!(sieve_phi(0), Err(Error::Domain(_))));
    }

    #[test]
    fn totient_table_invariants() {
        let t = sieve_phi(10_000).unwrap();
        let primes: std::collections::HashSet<u64> = primes_up_to(10_000).into_iter().collect();
        for n in 1..=10_000u64 {
            let v = t.at(n);
            assert!(v >= 1 && v as u64 <= n);
            if n >= 2 {
                assert_eq!(v as u64 == n - 1, primes.contains(&n), "n={n}");
            }
        }
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        let t = sieve_phi(10_000).unwrap();
        for a in 1..=100u64 {
            for b in 1..=10_000 / a {
                if gcd(a, b) == 1 {
                    assert_eq!(t.at(a * b), t.at(a) * t.at(b), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn divisor_sum_identity() {
        let t = sieve_phi(10_000).unwrap();
        let mut acc = vec![0i64; 10_001];
        for d in 1..=10_000usize {
            for m in (d..=10_000).step_by(d) {
                acc[m] += t.at(d as u64);
            }
        }
        for (n, &sum) in acc.iter().enumerate().skip(1) {
            assert_eq!(sum, n as i64);
        }
    }
}
