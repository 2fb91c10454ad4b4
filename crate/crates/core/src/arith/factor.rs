use serde::Serialize;

use super::{add_mod, gcd, mul_mod, pow_mod};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Deterministic Miller-Rabin; these witnesses are exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Canonical factorization `n = prod p^e` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFactorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs in any order,
    /// merging repeated primes.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            if e == 0 {
                continue;
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let mut n = 1u64;
        for &(p, e) in &merged {
            let pe = p
                .checked_pow(e)
                .ok_or(Error::Overflow("factorization product"))?;
            n = n
                .checked_mul(pe)
                .ok_or(Error::Overflow("factorization product"))?;
        }
        Ok(PrimeFactorization { n, factors: merged })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `(p, e, p^e)` for each factor.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32, u64)> + '_ {
        self.factors.iter().map(|&(p, e)| (p, e, p.pow(e)))
    }

    pub fn least_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

/// Factorizes `n >= 1`. Trial division handles every factor below 10^6; any
/// composite cofactor left over is split with Brent's variant of Pollard rho.
///
/// # Panics
/// Panics if `n == 0`.
pub fn factorize(n: u64) -> PrimeFactorization {
    assert!(n >= 1, "cannot factorize 0");
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        let e = strip(&mut m, p);
        if e > 0 {
            factors.push((p, e));
        }
    }
    // wheel 6k +- 1
    let mut d = 7u64;
    let mut step = 4u64;
    while d <= TRIAL_LIMIT && d * d <= m {
        let e = strip(&mut m, d);
        if e > 0 {
            factors.push((d, e));
        }
        d += step;
        step = 6 - step;
    }
    if m > 1 {
        let mut large = Vec::new();
        split_large(m, &mut large);
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    PrimeFactorization { n, factors }
}

fn strip(m: &mut u64, p: u64) -> u32 {
    let mut e = 0;
    while *m % p == 0 {
        *m /= p;
        e += 1;
    }
    e
}

fn split_large(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    let d = (1..)
        .find_map(|c| pollard_brent(m, c))
        .expect("rho eventually splits a composite");
    split_large(d, out);
    split_large(m / d, out);
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let (mut x, mut ys);
    let m = 128u64;
    let mut g;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        loop {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
            if k >= r || g != 1 {
                break;
            }
        }
        r *= 2;
        if g != 1 {
            break;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g != 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Smallest-prime-factor table for fast repeated factorization of every
/// integer up to a bound.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(1) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        FactorSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Factorizes `n`, using the table when `n` is in range.
    pub fn factorize(&self, n: u64) -> PrimeFactorization {
        if n == 0 || n > self.limit() {
            return factorize(n);
        }
        let mut m = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        PrimeFactorization { n, factors }
    }

    /// Primes up to the sieve limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.spf
            .iter()
            .enumerate()
            .skip(2)
            .filter(|&(i, &p)| p as usize == i)
            .map(|(i, _)| i as u64)
    }
}

/// Whether `n` is a perfect square.
pub(crate) fn is_perfect_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(factorize(360).factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(1 << 10).factors(), &[(2, 10)]);
    }

    #[test]
    fn primality_small() {
        let sieve = FactorSieve::new(10_000);
        for n in 0..=10_000u64 {
            let expected = n >= 2 && sieve.factorize(n).factors() == [(n, 1)];
            assert_eq!(is_prime(n), expected, "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn rho_splits_products_of_large_primes() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factorize(p * q);
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
        let f = factorize(p * p * 7);
        assert_eq!(f.factors(), &[(7, 1), (p, 2)]);
        let r = 4_294_967_291u64;
        assert_eq!(factorize(r * 4_294_967_279).factors().len(), 2);
    }

    #[test]
    fn reassembles_up_to_a_million() {
        let sieve = FactorSieve::new(1_000_000);
        for n in 1..=1_000_000u64 {
            let f = factorize(n);
            let back: u64 = f.prime_powers().map(|(_, _, q)| q).product();
            assert_eq!(back, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            if n % 997 == 0 {
                assert_eq!(sieve.factorize(n), f);
            }
        }
    }

    #[test]
    fn from_factors_validates() {
        assert!(matches!(
            PrimeFactorization::from_factors(vec![(4, 1)]),
            Err(Error::NotPrime(4))
        ));
        let f = PrimeFactorization::from_factors(vec![(5, 1), (2, 1), (2, 2)]).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (5, 1)]);
        assert_eq!(f.n(), 40);
        assert_eq!(f.totient(), 16);
    }

    proptest! {
        #[test]
        fn factorize_inverts_multiply(ps in proptest::collection::vec((0usize..12, 1u32..4), 0..5)) {
            const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 101, 997, 65_537, 1_000_003, 2_147_483_647, 3];
            let raw: Vec<(u64, u32)> = ps.iter().map(|&(i, e)| (PRIMES[i], e)).collect();
            if let Ok(f) = PrimeFactorization::from_factors(raw) {
                prop_assert_eq!(factorize(f.n()), f);
            }
        }
    }
}
