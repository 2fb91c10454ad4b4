use serde::Serialize;

use crate::arith::{gcd, legendre_unchecked, reduce, FactorSieve, PrimeFactorization};
use crate::cardinality::ratio_from_factorization;
use crate::error::{Error, Result};
use crate::parallel;
use crate::report::{decimal6, format_rational, serialize_rational, Record};
use crate::Rational;

/// Primes up to this bound enter the truncated density product.
pub const DENSITY_PRODUCT_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub a: i64,
    pub x: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub threshold: Rational,
    /// `|E_a(x)|`
    pub e_a_count: u64,
    /// `|C_a(L, x)|`
    pub c_a_count: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub empirical_density: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub k_a: Rational,
    pub product_limit: u64,
    /// `K_a * prod (1 - p^-2)` over primes `p = 3 mod 4` with `(a/p) = 1`,
    /// `p <= product_limit`. Overestimates the infinite product.
    pub bound_truncated: f64,
    /// Upper bound on the omitted tail sum of `p^-2`.
    pub tail_sum_bound: f64,
    /// `bound_truncated * (1 - tail_sum_bound)`, below the infinite product.
    pub bound_lower: f64,
}

impl Record for DensityReport {
    const HEADER: &'static [&'static str] = &[
        "a",
        "x",
        "L",
        "e_a_count",
        "c_a_count",
        "density",
        "density_decimal",
        "k_a",
        "bound_truncated",
        "bound_lower",
    ];

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.a.to_string(),
            self.x.to_string(),
            format_rational(&self.threshold),
            self.e_a_count.to_string(),
            self.c_a_count.to_string(),
            format_rational(&self.empirical_density),
            decimal6(&self.empirical_density),
            format_rational(&self.k_a),
            format!("{:.6}", self.bound_truncated),
            format!("{:.6}", self.bound_lower),
        ]]
    }
}

/// The constant `K_a`: 1 for even `a`, else keyed on `a mod 8`.
pub fn k_a(a: i64) -> Rational {
    match a.rem_euclid(8) {
        0 | 2 | 4 | 6 => Rational::from(1),
        1 => Rational::new(63, 64),
        5 => Rational::new(31, 32),
        _ => Rational::new(15, 16),
    }
}

/// Membership in `E_a`: `n` coprime to `a`, and `a` a residue modulo every
/// prime `p = 3 mod 4` dividing `n`.
pub fn in_e_a(a: i64, f: &PrimeFactorization) -> bool {
    let n = f.n();
    if n > 1 && gcd(reduce(a, n), n) != 1 {
        return false;
    }
    f.factors()
        .iter()
        .filter(|&&(p, _)| p % 4 == 3)
        .all(|&(p, _)| legendre_unchecked(reduce(a, p), p) == 1)
}

/// `(truncated, tail, lower)` for the density lower bound.
pub fn density_bound(a: i64, limit: u64) -> (f64, f64, f64) {
    let sieve = FactorSieve::new(limit);
    let product: f64 = sieve
        .primes()
        .filter(|&p| p % 4 == 3 && legendre_unchecked(reduce(a, p), p) == 1)
        .map(|p| 1.0 - 1.0 / (p as f64 * p as f64))
        .product();
    let truncated = crate::report::to_f64(&k_a(a)) * product;
    // sum_{p > P} p^-2 < sum_{k > P} k^-2 < 1/P
    let tail = 1.0 / limit as f64;
    (truncated, tail, truncated * (1.0 - tail))
}

/// Counts `E_a(x)` and `C_a(L, x)` over `1 <= n <= x` from the closed forms.
pub fn density_report(a: i64, x: u64, threshold: Rational) -> Result<DensityReport> {
    if a == 0 {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    if x < 2 {
        return Err(Error::InvalidInput("scan bound must be at least 2".into()));
    }
    let sieve = FactorSieve::new(x);
    let blocks = parallel::blocks(1, x + 1, parallel::current_threads());
    let counts = parallel::map_slice(&blocks, |&(lo, hi)| -> Result<(u64, u64)> {
        let (mut e, mut c) = (0u64, 0u64);
        for n in lo..hi {
            let f = sieve.factorize(n);
            if !in_e_a(a, &f) {
                continue;
            }
            e += 1;
            if ratio_from_factorization(a, &f)?.value > threshold {
                c += 1;
            }
        }
        Ok((e, c))
    });
    let (mut e_a_count, mut c_a_count) = (0, 0);
    for part in counts {
        let (e, c) = part?;
        e_a_count += e;
        c_a_count += c;
    }
    let (bound_truncated, tail_sum_bound, bound_lower) = density_bound(a, DENSITY_PRODUCT_LIMIT);
    Ok(DensityReport {
        a,
        x,
        threshold,
        e_a_count,
        c_a_count,
        empirical_density: Rational::new(c_a_count as u128, e_a_count.max(1) as u128),
        k_a: k_a(a),
        product_limit: DENSITY_PRODUCT_LIMIT,
        bound_truncated,
        tail_sum_bound,
        bound_lower,
    })
}
