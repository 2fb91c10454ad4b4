//! Quadratic residues modulo primes and prime powers.

use super::{inv_mod, is_prime, mul_mod, pow_mod, reduce, sub_mod};
use crate::error::{Error, Result};

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(legendre_unchecked(reduce(a, p), p))
}

/// `p` must be an odd prime and `a < p`.
pub(crate) fn legendre_unchecked(a: u64, p: u64) -> i8 {
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether a unit `u` is a square modulo `p^t`.
fn unit_is_square(u: u64, p: u64, t: u32) -> bool {
    if t == 0 {
        return true;
    }
    if p == 2 {
        match t {
            1 => true,
            2 => u % 4 == 1,
            _ => u % 8 == 1,
        }
    } else {
        legendre_unchecked(u % p, p) == 1
    }
}

/// Whether `x^2 = a (mod p^t)` is solvable. `a` need not be coprime to `p`:
/// writing `a = p^s u` with `p` not dividing `u`, it is a square iff `s >= t`,
/// or `s` is even and `u` is a square modulo `p^(t-s)`.
///
/// `p` is assumed prime.
pub fn is_square_mod_pp(a: i64, p: u64, t: u32) -> bool {
    debug_assert!(t >= 1);
    let q = p.pow(t);
    let mut a = reduce(a, q);
    if a == 0 {
        return true;
    }
    let mut s = 0u32;
    while a % p == 0 {
        a /= p;
        s += 1;
    }
    s % 2 == 0 && unit_is_square(a, p, t - s)
}

/// A square root of the nonzero residue `a` modulo the odd prime `p`.
/// `a` must be a quadratic residue.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p)
        .find(|&z| legendre_unchecked(z, p) == -1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// All `x` in `[0, p^t)` with `x^2 = a (mod p^t)`, ascending.
///
/// For odd `p` there are 0 or 2 roots. For `p = 2` there is one root at
/// `t = 1`, two at `t = 2` when `a = 1 (mod 4)`, and four for `t >= 3` when
/// `a = 1 (mod 8)`.
pub fn sqrt_mod_pp(a: i64, p: u64, t: u32) -> Result<Vec<u64>> {
    if t == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p.checked_pow(t).ok_or(Error::Overflow("prime power"))?;
    let a_red = reduce(a, q);
    if a_red % p == 0 {
        return Err(Error::NotCoprime { a, n: p });
    }
    if p == 2 {
        return Ok(sqrt_mod_2pow(a_red, t));
    }
    if legendre_unchecked(a_red % p, p) != 1 {
        return Ok(Vec::new());
    }
    let mut x = tonelli_shanks(a_red % p, p);
    // Newton iteration x <- x - (x^2 - a)/(2x) doubles the p-adic precision.
    while mul_mod(x, x, q) != a_red {
        let f = sub_mod(mul_mod(x, x, q), a_red, q);
        let inv = inv_mod(mul_mod(2, x, q), q).expect("2x is a unit");
        x = sub_mod(x, mul_mod(f, inv, q), q);
    }
    let mut roots = vec![x, q - x];
    roots.sort_unstable();
    Ok(roots)
}

fn sqrt_mod_2pow(a: u64, t: u32) -> Vec<u64> {
    match t {
        1 => return vec![1],
        2 => return if a % 4 == 1 { vec![1, 3] } else { vec![] },
        _ => {}
    }
    if a % 8 != 1 {
        return Vec::new();
    }
    let q = 1u64 << t;
    let mut x = 1u64;
    for k in 3..t {
        // x^2 = a mod 2^k; adding 2^(k-1) flips bit k of the square.
        let next = 1u64 << (k + 1);
        if mul_mod(x, x, next) != a % next {
            x += 1 << (k - 1);
        }
    }
    let half = q / 2;
    let mut roots = vec![x, q - x, (x + half) % q, (q - x + half) % q];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Number of distinct values `k^2 mod p^t`, by Stangl's closed form.
pub fn count_squares_mod_pp(p: u64, t: u32) -> u64 {
    assert!(t >= 1, "exponent must be at least 1");
    let sign: i128 = if t % 2 == 1 { 1 } else { -1 }; // (-1)^(t-1)
    if p == 2 {
        // 2^(t-1)/3 + (-1)^(t-1)/6 + 3/2
        let num = (1i128 << t) + sign + 9;
        exact_div(num, 6)
    } else {
        // p^(t+1)/(2(p+1)) + (-1)^(t-1)(p-1)/(4(p+1)) + 3/4
        let p = p as i128;
        let num = 2 * p.pow(t + 1) + sign * (p - 1) + 3 * (p + 1);
        exact_div(num, 4 * (p + 1))
    }
}

pub(crate) fn exact_div(num: i128, den: i128) -> u64 {
    assert_eq!(num % den, 0, "closed form {num}/{den} is not an integer");
    u64::try_from(num / den).expect("closed form is a nonnegative u64")
}
