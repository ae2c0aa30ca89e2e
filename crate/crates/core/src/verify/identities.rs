//! Exact identities and inequalities, checked in integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::analytic::{vartheta, zeta};
use crate::sieve::sieve_mu;
use crate::summatory::{totient_summatory, SummatoryCache, SummatoryKind};
use crate::{s_hybrid, sum_of_floor_powers, Error, Result, SumParams};

/// Cost guard for the direct double sum.
pub const DECOMPOSITION_MAX_X: u64 = 10_000_000;

/// The four sides of the hyperbola split of `Σ_{md≤x} μ(m)·d` at
/// `m ≤ A = ⌊x/z⌋`, `d ≤ B = ⌊z⌋`, and Φ(x) from the summatory cache.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub x: u64,
    pub z: f64,
    pub a: u64,
    pub b: u64,
    /// `Σ_{m≤A} Σ_{d≤x/m} μ(m)·d`
    pub sigma1: i128,
    /// `Σ_{d≤B} Σ_{m≤x/d} μ(m)·d`
    pub sigma2: i128,
    /// `Σ_{m≤A} Σ_{d≤B} μ(m)·d`
    pub sigma3: i128,
    /// `Σ_{md≤x} μ(m)·d`, summed pair by pair.
    pub direct: i128,
    pub summatory: i128,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        let split = self.sigma1 + self.sigma2 - self.sigma3;
        split == self.direct && self.direct == self.summatory
    }
}

fn triangular(n: u64) -> i128 {
    n as i128 * (n as i128 + 1) / 2
}

/// Checks `Σ₁ + Σ₂ − Σ₃ = Σ_{md≤x} μ(m)·d = Φ(x)` exactly.
pub fn hyperbola_decomposition_check(x: u64, z: f64) -> Result<DecompositionReport> {
    if x == 0 {
        return Err(Error::domain("decomposition requires x >= 1"));
    }
    if x > DECOMPOSITION_MAX_X {
        return Err(Error::Capacity {
            what: "direct double sum",
            needed: x,
            cap: DECOMPOSITION_MAX_X,
        });
    }
    // z ≤ x^{1/3}, with slack for z passed as a rounded cube root.
    if !(z >= 1.0 && z * z * z <= x as f64 * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "decomposition requires 1 <= z <= x^(1/3), got z={z}"
        )));
    }
    let b = z.floor() as u64;
    // Any integers with A·B ≤ x < (A+1)(B+1) split the hyperbola exactly.
    let mut a = crate::analytic::floor_div(x, z);
    while a as u128 * b as u128 > x as u128 {
        a -= 1;
    }
    while (a as u128 + 1) * (b as u128 + 1) <= x as u128 {
        a += 1;
    }

    let mu = sieve_mu(x)?;
    let mu = mu.values();
    let mut mertens = Vec::with_capacity(mu.len() + 1);
    mertens.push(0i64);
    let mut acc = 0i64;
    for &u in mu {
        acc += u;
        mertens.push(acc);
    }

    let sigma1: i128 = (1..=a)
        .map(|m| mu[(m - 1) as usize] as i128 * triangular(x / m))
        .sum();
    let sigma2: i128 = (1..=b)
        .map(|d| d as i128 * mertens[(x / d) as usize] as i128)
        .sum();
    let sigma3 = mertens[a as usize] as i128 * triangular(b);

    let mut direct: i128 = 0;
    for m in 1..=x {
        let u = mu[(m - 1) as usize];
        if u == 0 {
            continue;
        }
        let mut inner: i128 = 0;
        for d in 1..=x / m {
            inner += d as i128;
        }
        direct += u as i128 * inner;
    }

    let mut cache = SummatoryCache::new(SummatoryKind::Totient, x)?;
    let summatory = BigInt::from(totient_summatory(x, &mut cache)?)
        .to_i128()
        .expect("Φ(x) fits i128 for x within the cost guard");

    Ok(DecompositionReport {
        x,
        z,
        a,
        b,
        sigma1,
        sigma2,
        sigma3,
        direct,
        summatory,
    })
}

/// `Φ(x) − x²/(2ζ(2)) + ϑ(x, z)`, the remainder the hyperbola analysis
/// leaves, with Φ(x) computed exactly.
pub fn hyperbola_residual(x: u64, z: f64) -> Result<f64> {
    let mut cache = SummatoryCache::new(SummatoryKind::Totient, x.max(1))?;
    let phi = totient_summatory(x, &mut cache)?;
    hyperbola_residual_from(&phi, x, z)
}

/// As [`hyperbola_residual`], with Φ(x) supplied by the caller.
pub fn hyperbola_residual_from(summatory: &BigUint, x: u64, z: f64) -> Result<f64> {
    if x < 1 || !(z >= 1.0 && z * z * z <= x as f64 * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "residual requires 1 <= z <= x^(1/3) (x={x}, z={z})"
        )));
    }
    let zeta2 = zeta(2.0)?.to_f64();
    let xf = x as f64;
    let theta = vartheta(x, z)?.to_f64();
    let phi = summatory.to_f64().expect("finite");
    Ok(phi - xf * xf / (2.0 * zeta2) + theta)
}

/// Exact lower/upper bounds for `S` when `c = j − k ≥ 2` is an integer:
///
/// ```text
/// L = Σ[x/n]^{c−1} ≤ S ≤ Σ[x/n]^c − Σ[x/n]^{c−1} + (x − ⌊x/2⌋) = U
/// ```
///
/// from `1 ≤ φ(m)` everywhere and `φ(m) ≤ m − 1` for `m ≥ 2`; the last
/// term accounts for the `n > x/2` with `[x/n] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub c: u32,
    pub x: u64,
    pub lower: BigInt,
    pub s: BigInt,
    pub upper: BigInt,
    /// `S / (ζ(c)·x^c)`
    pub ratio_to_zeta: f64,
    /// `S / (2·Σ[x/n]^{c−1})`
    pub ratio_to_twice_lower: f64,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.lower <= self.s && self.s <= self.upper
    }
}

pub fn sandwich_check(params: &SumParams, x: u64) -> Result<SandwichReport> {
    let c = params.c();
    if c.fract() != 0.0 || c < 2.0 {
        return Err(Error::domain(format!(
            "sandwich requires integer j - k >= 2, got {c}"
        )));
    }
    let s = s_hybrid(params, x)?;
    let s = s
        .as_exact()
        .expect("integer c >= 2 evaluates exactly")
        .clone();
    let pow_c = sum_of_floor_powers(x, c)?;
    let pow_c1 = sum_of_floor_powers(x, c - 1.0)?;
    let (pow_c, lower) = (
        pow_c.as_exact().expect("integer exponent").clone(),
        pow_c1.as_exact().expect("integer exponent").clone(),
    );
    let upper = &pow_c - &lower + BigInt::from(x - x / 2);
    let s_f = s.to_f64().unwrap_or(f64::INFINITY);
    let ratio_to_zeta = s_f / (zeta(c)?.to_f64() * (x as f64).powf(c));
    let ratio_to_twice_lower = s_f / (2.0 * lower.to_f64().unwrap_or(f64::INFINITY));
    Ok(SandwichReport {
        c: c as u32,
        x,
        lower,
        s,
        upper,
        ratio_to_zeta,
        ratio_to_twice_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(j: f64, k: f64) -> SumParams {
        SumParams::new(j, k).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        for (x, z, want) in [(10u64, 2.0, 32i128), (100, 4.0, 3044), (1, 1.0, 1)] {
            let r = hyperbola_decomposition_check(x, z).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.direct, want);
            assert_eq!(r.sigma1 + r.sigma2 - r.sigma3, want);
        }
    }

    #[test]
    fn decomposition_cube_root_split() {
        for x in [8u64, 27, 64, 99, 1000, 12_345] {
            let r = hyperbola_decomposition_check(x, (x as f64).cbrt()).unwrap();
            assert!(r.passed(), "x={x}: {r:?}");
            assert!(r.a * r.b <= x && (r.a + 1) * (r.b + 1) > x);
        }
    }

    #[test]
    fn decomposition_domain() {
        assert!(matches!(
            hyperbola_decomposition_check(100, 5.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hyperbola_decomposition_check(100, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hyperbola_decomposition_check(DECOMPOSITION_MAX_X + 1, 1.0),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn residual_small_relative_to_x() {
        let r = hyperbola_residual(10_000, 1.0).unwrap();
        assert!(r.abs() < 10_000.0, "{r}");
        let r = hyperbola_residual(1_000_000, 10.0).unwrap();
        assert!(r.is_finite());
    }

    #[test]
    fn residual_independent_of_phi_source() {
        let x = 50_000u64;
        let sieved: i64 = crate::sieve::sieve_phi(x).unwrap().values().iter().sum();
        let a = hyperbola_residual_from(&BigUint::from(sieved as u64), x, 3.0).unwrap();
        let b = hyperbola_residual(x, 3.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sandwich_examples() {
        let r = sandwich_check(&p(3.0, 1.0), 10).unwrap();
        assert_eq!(
            (r.lower.clone(), r.s.clone(), r.upper.clone()),
            (27.into(), 75.into(), 125.into())
        );
        assert!(r.passed());
        let r = sandwich_check(&p(2.0, 0.0), 2).unwrap();
        assert_eq!(
            (r.lower.clone(), r.s.clone(), r.upper.clone()),
            (3.into(), 3.into(), 3.into())
        );
        let r = sandwich_check(&p(4.0, 1.0), 1).unwrap();
        assert_eq!(
            (r.lower.clone(), r.s.clone(), r.upper.clone()),
            (1.into(), 1.into(), 1.into())
        );
        assert!(sandwich_check(&p(2.0, 1.0), 10).is_err());
        assert!(sandwich_check(&p(2.5, 0.0), 10).is_err());
    }

    #[test]
    fn sandwich_holds_small_x() {
        for x in 1..=300 {
            for params in [p(3.0, 1.0), p(4.0, 1.0), p(6.0, 1.0)] {
                assert!(sandwich_check(&params, x).unwrap().passed(), "x={x}");
            }
        }
    }
}
