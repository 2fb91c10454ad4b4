use serde::Serialize;

use crate::arith::{is_perfect_square, is_prime};
use crate::cardinality::ratio_from_prime_powers;
use crate::error::{Error, Result};
use crate::report::{decimal6, format_rational, serialize_rational, Record};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimorialRow {
    pub k: u32,
    /// The `k`-th prime congruent to 3 mod 4.
    pub prime: u64,
    /// `N_k`, the product of the first `k` such primes.
    pub primorial: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub c2: Rational,
    /// `c2(a; N_k^t)`
    #[serde(serialize_with = "serialize_rational")]
    pub c2_power: Rational,
    pub log_log: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimorialReport {
    pub a: i64,
    pub t: u32,
    pub rows: Vec<PrimorialRow>,
}

impl Record for PrimorialReport {
    const HEADER: &'static [&'static str] = &[
        "a",
        "t",
        "k",
        "prime",
        "N_k",
        "c2",
        "c2_decimal",
        "c2_power",
        "c2_power_decimal",
        "log_log_N_k",
    ];

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    self.a.to_string(),
                    self.t.to_string(),
                    r.k.to_string(),
                    r.prime.to_string(),
                    r.primorial.to_string(),
                    format_rational(&r.c2),
                    decimal6(&r.c2),
                    format_rational(&r.c2_power),
                    decimal6(&r.c2_power),
                    format!("{:.6}", r.log_log),
                ]
            })
            .collect()
    }
}

/// Primes congruent to 3 mod 4, ascending.
pub fn primes_3_mod_4() -> impl Iterator<Item = u64> {
    (3u64..).step_by(4).filter(|&p| is_prime(p))
}

/// `c2(a; N_k)` and `c2(a; N_k^t)` for `k = 1..=k_max`.
pub fn primorial_series(a: i64, k_max: u32, t: u32) -> Result<PrimorialReport> {
    if t < 2 {
        return Err(Error::InvalidInput(format!(
            "exponent t = {t} must be at least 2"
        )));
    }
    if a <= 0 || !is_perfect_square(a as u64) {
        return Err(Error::InvalidInput(format!(
            "a = {a} must be a positive perfect square"
        )));
    }
    let primes: Vec<u64> = primes_3_mod_4().take(k_max as usize).collect();
    if let Some(&p) = primes.iter().find(|&&p| a as u64 % p == 0) {
        return Err(Error::NotCoprime { a, n: p });
    }
    let mut rows = Vec::with_capacity(primes.len());
    let mut primorial = 1u128;
    for (i, &p) in primes.iter().enumerate() {
        primorial = primorial
            .checked_mul(p as u128)
            .ok_or(Error::Overflow("primorial"))?;
        let base: Vec<(u64, u32)> = primes[..=i].iter().map(|&q| (q, 1)).collect();
        let power: Vec<(u64, u32)> = primes[..=i].iter().map(|&q| (q, t)).collect();
        rows.push(PrimorialRow {
            k: i as u32 + 1,
            prime: p,
            primorial,
            c2: ratio_from_prime_powers(a, &base)?.value,
            c2_power: ratio_from_prime_powers(a, &power)?.value,
            log_log: (primorial as f64).ln().ln(),
        });
    }
    Ok(PrimorialReport { a, t, rows })
}
