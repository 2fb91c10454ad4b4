use serde::Serialize;

use crate::arith::{
    add_mod, checked_pow, inv_mod, is_prime, legendre_unchecked, mul_mod, reduce, sqrt_mod_pp,
    sub_mod,
};
use crate::error::{Error, Result};
use crate::report::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SumProductTriple {
    pub b: u64,
    pub a: u64,
    pub p: u64,
    pub t: u32,
    pub modulus: u64,
    pub x: [u64; 3],
    /// The `y` whose discriminant was used.
    pub y: u64,
}

impl Record for SumProductTriple {
    const HEADER: &'static [&'static str] = &["b", "a", "p", "t", "x1", "x2", "x3"];

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.b.to_string(),
            self.a.to_string(),
            self.p.to_string(),
            self.t.to_string(),
            self.x[0].to_string(),
            self.x[1].to_string(),
            self.x[2].to_string(),
        ]]
    }
}

/// Finds units `x1, x2, x3` mod `p^t` with `x1 + x2 + x3 = b` and
/// `x1 x2 x3 = a`.
///
/// Scans `y = 1, 2, ...` for the first with `R(y) = -4ay^3 + b^2y^2 - 2by + 1`
/// a nonzero square mod `p`, lifts its root to `p^t`, and solves
/// `x^2 + x(1/y - b) + ay = 0`. The triple is `(x, 1/y, b - x - 1/y)`.
pub fn solve_sum_product(b: i64, a: i64, p: u64, t: u32) -> Result<SumProductTriple> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= 7 {
        return Err(Error::Unsupported(format!("solver needs p > 7, got {p}")));
    }
    if t == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    let q = checked_pow(p, t).ok_or(Error::Overflow("prime power"))?;
    let (b, a) = (reduce(b, q), reduce(a, q));
    if a % p == 0 {
        return Err(Error::NotCoprime { a: a as i64, n: p });
    }
    let inv2 = inv_mod(2, q).expect("p is odd");
    for y in 1..p {
        let r = discriminant(a, b, y, q);
        if r % p == 0 || legendre_unchecked(r % p, p) != 1 {
            continue;
        }
        let s = sqrt_mod_pp(r as i64, p, t)?[0];
        let y_inv = inv_mod(y, q).expect("y < p is a unit");
        let linear = sub_mod(y_inv, b, q);
        let x = mul_mod(add_mod(q - linear % q, mul_mod(s, y_inv, q), q), inv2, q);
        let x3 = sub_mod(sub_mod(b, x, q), y_inv, q);
        let triple = SumProductTriple {
            b,
            a,
            p,
            t,
            modulus: q,
            x: [x, y_inv, x3],
            y,
        };
        verify(&triple)?;
        return Ok(triple);
    }
    Err(Error::InvariantViolation(format!(
        "no y with a nonzero square discriminant for b = {b}, a = {a}, p = {p}"
    )))
}

/// `-4ay^3 + b^2y^2 - 2by + 1 mod q`
fn discriminant(a: u64, b: u64, y: u64, q: u64) -> u64 {
    let y2 = mul_mod(y, y, q);
    let y3 = mul_mod(y2, y, q);
    let cubic = mul_mod(mul_mod(4, a, q), y3, q);
    let quad = mul_mod(mul_mod(b, b, q), y2, q);
    let lin = mul_mod(mul_mod(2, b, q), y, q);
    add_mod(sub_mod(sub_mod(quad, cubic, q), lin, q), 1 % q, q)
}

fn verify(t: &SumProductTriple) -> Result<()> {
    let q = t.modulus;
    let sum = t.x.iter().fold(0, |acc, &v| add_mod(acc, v, q));
    let prod = t.x.iter().fold(1 % q, |acc, &v| mul_mod(acc, v, q));
    let units = t.x.iter().all(|&v| v % t.p != 0);
    if sum != t.b || prod != t.a || !units {
        return Err(Error::InvariantViolation(format!(
            "substitution check failed for {t:?}"
        )));
    }
    Ok(())
}
