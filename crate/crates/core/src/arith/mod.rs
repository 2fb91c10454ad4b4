//! Exact modular arithmetic on 64-bit moduli.
//!
//! Every product of two residues is formed in 128 bits, so any modulus that
//! fits in a `u64` is safe. CRT combination checks that the combined modulus
//! still fits.

mod factor;
mod quadratic;

pub(crate) use factor::is_perfect_square;
pub use factor::{factorize, is_prime, FactorSieve, PrimeFactorization};
pub use quadratic::{count_squares_mod_pp, is_square_mod_pp, legendre, sqrt_mod_pp};
pub(crate) use quadratic::{exact_div, legendre_unchecked};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `p^t`, or `None` on overflow.
pub fn checked_pow(p: u64, t: u32) -> Option<u64> {
    p.checked_pow(t)
}

/// Euler's totient of a prime power.
pub fn phi_pp(p: u64, t: u32) -> u64 {
    debug_assert!(t >= 1);
    (p - 1) * p.pow(t - 1)
}

/// A residue `value mod modulus`, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueClass {
    value: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        Ok(ResidueClass {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Combines congruences with pairwise-coprime moduli into the unique residue
/// modulo their product. An empty input is the trivial class `0 mod 1`.
pub fn crt_combine(residues: &[ResidueClass]) -> Result<ResidueClass> {
    let mut acc = ResidueClass {
        value: 0,
        modulus: 1,
    };
    for r in residues {
        let g = gcd(acc.modulus, r.modulus);
        if g != 1 {
            return Err(Error::CrtNotCoprime {
                left: acc.modulus,
                right: r.modulus,
            });
        }
        let modulus = acc
            .modulus
            .checked_mul(r.modulus)
            .ok_or(Error::Overflow("CRT modulus product"))?;
        // x = acc.value + acc.modulus * k, with k chosen so x = r.value mod r.modulus
        let inv = inv_mod(acc.modulus % r.modulus, r.modulus).expect("coprime moduli");
        let k = mul_mod(sub_mod(r.value, acc.value, r.modulus), inv, r.modulus);
        let value =
            ((acc.value as u128 + acc.modulus as u128 * k as u128) % modulus as u128) as u64;
        acc = ResidueClass { value, modulus };
    }
    Ok(acc)
}
