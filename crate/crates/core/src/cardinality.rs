//! Closed-form sizes of reduced planar sumsets and difference sets at prime
//! powers, their multiplicative composition over `n`, and the ratio
//! `c2(a; n) = |S2(a; n)| / |D2(a; n)|`.

use std::fmt;

use serde::Serialize;

use crate::arith::{
    exact_div, factorize, gcd, is_prime, legendre_unchecked, reduce, PrimeFactorization,
};
use crate::error::{Error, Result};
use crate::hyperbola::{signed_sumset, HyperbolaSpec};
use crate::report::Record;
use crate::Rational;

/// Which planar set is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Sum,
    Difference,
}

/// How a per-prime-power count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "closed-form-p2")]
    ClosedFormP2,
    #[serde(rename = "closed-form-odd-p")]
    ClosedFormOddP,
    #[serde(rename = "small-power-table")]
    SmallPowerTable,
    #[serde(rename = "full-coverage-d>2")]
    FullCoverage,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedFormP2 => "closed-form-p2",
            Method::ClosedFormOddP => "closed-form-odd-p",
            Method::SmallPowerTable => "small-power-table",
            Method::FullCoverage => "full-coverage-d>2",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorCount {
    pub p: u64,
    pub t: u32,
    pub count: u64,
    pub method: Method,
}

/// Per-prime-power counts of `S_d(m; a; n)` and their product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardinalityReport {
    pub spec: HyperbolaSpec,
    pub per_factor: Vec<FactorCount>,
    pub total: u64,
}

impl Record for CardinalityReport {
    const HEADER: &'static [&'static str] =
        &["a", "n", "d", "m", "p", "t", "count", "method", "total"];

    /// One row per prime power, each repeating the total.
    fn rows(&self) -> Vec<Vec<String>> {
        self.per_factor
            .iter()
            .map(|f| {
                vec![
                    self.spec.a().to_string(),
                    self.spec.n().to_string(),
                    self.spec.d().to_string(),
                    self.spec.m().to_string(),
                    f.p.to_string(),
                    f.t.to_string(),
                    f.count.to_string(),
                    f.method.to_string(),
                    self.total.to_string(),
                ]
            })
            .collect()
    }
}

fn validate_prime_power(a: i64, p: u64, t: u32) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p.checked_pow(t).ok_or(Error::Overflow("prime power"))?;
    if reduce(a, p) == 0 {
        return Err(Error::NotCoprime { a, n: p });
    }
    Ok(q)
}

/// `(p-3) p^(t-1) / 2 + p^(t-1)/(p+1) + 3/2 + (-1)^(t-1) (p-1) / (2(p+1))`,
/// the size when the shifted square condition has solutions divisible by `p`.
fn odd_full_branch(p: u64, t: u32) -> u64 {
    let (s_prime, s_double) = odd_components(p, t, true);
    s_prime + s_double
}

/// Counts of `k` with `k^2 - a` a nonzero square mod `p^t` not divisible by
/// `p`, and a square divisible by `p`, given whether `a` is a residue mod `p`.
fn odd_components(p: u64, t: u32, residue: bool) -> (u64, u64) {
    let pt1 = p.pow(t - 1) as i128;
    let pi = p as i128;
    if !residue {
        return (exact_div((pi - 1) * pt1, 2), 0);
    }
    let s_prime = exact_div((pi - 3) * pt1, 2);
    let sign: i128 = if t % 2 == 1 { 1 } else { -1 };
    let s_double = exact_div(2 * pt1 + 3 * (pi + 1) + sign * (pi - 1), 2 * (pi + 1));
    (s_prime, s_double)
}

/// Sum-set size at `2^t`: the stated small-power values for `t <= 4` and the
/// three branches on `a mod 8` beyond.
fn two_power_sum(a: u64, t: u32) -> (u64, Method) {
    match t {
        1 | 2 => (1, Method::SmallPowerTable),
        3 => (if a % 4 == 1 { 2 } else { 1 }, Method::SmallPowerTable),
        4 => (2, Method::SmallPowerTable),
        _ => {
            let count = match a % 8 {
                1 => two_power_squares_branch(t),
                3 | 7 => 1 << (t - 3),
                5 => 1 << (t - 4),
                _ => unreachable!("a is odd"),
            };
            (count, Method::ClosedFormP2)
        }
    }
}

fn two_power_difference(a: u64, t: u32) -> (u64, Method) {
    if t <= 4 {
        // D2(a; 2^t) = S2(-a; 2^t)
        let q = 1u64 << t;
        let (count, _) = two_power_sum((q - a % q) % q, t);
        return (count, Method::SmallPowerTable);
    }
    let count = match a % 8 {
        7 => two_power_squares_branch(t),
        1 | 5 => 1 << (t - 3),
        3 => 1 << (t - 4),
        _ => unreachable!("a is odd"),
    };
    (count, Method::ClosedFormP2)
}

/// `2^(t-4)/3 + (-1)^(t-1)/3 + 3`
fn two_power_squares_branch(t: u32) -> u64 {
    let sign: i128 = if t % 2 == 1 { 1 } else { -1 };
    exact_div((1i128 << (t - 4)) + sign + 9, 3)
}

fn card_s2_pp_method(a: i64, p: u64, t: u32, kind: SetKind) -> Result<(u64, Method)> {
    let q = validate_prime_power(a, p, t)?;
    let a = reduce(a, q);
    if p == 2 {
        return Ok(match kind {
            SetKind::Sum => two_power_sum(a, t),
            SetKind::Difference => two_power_difference(a, t),
        });
    }
    // D2(a) = S2(-a): only the residue character of +-a matters
    let key = match kind {
        SetKind::Sum => a % p,
        SetKind::Difference => (p - a % p) % p,
    };
    let count = if legendre_unchecked(key, p) == 1 {
        odd_full_branch(p, t)
    } else {
        (p - 1) * p.pow(t - 1) / 2
    };
    Ok((count, Method::ClosedFormOddP))
}

/// `|S2(a; p^t)|` or `|D2(a; p^t)|` from the closed forms.
pub fn card_s2_pp(a: i64, p: u64, t: u32, kind: SetKind) -> Result<u64> {
    card_s2_pp_method(a, p, t, kind).map(|(c, _)| c)
}

/// The split `|S2(a; p^t)| = s' + s''` for odd `p`, where `s'` counts `k` with
/// `k^2 - a` a square not divisible by `p` and `s''` those divisible by `p`.
pub fn card_s2_components(a: i64, p: u64, t: u32) -> Result<(u64, u64)> {
    if p == 2 {
        return Err(Error::Unsupported(
            "components are defined for odd primes only".into(),
        ));
    }
    let q = validate_prime_power(a, p, t)?;
    let residue = legendre_unchecked(reduce(a, q) % p, p) == 1;
    Ok(odd_components(p, t, residue))
}

/// Size of `S_d(m; a; n)` composed over the prime powers of `n`.
///
/// `d = 2` uses the closed forms. For `d > 2` every prime power with `p > 7`
/// is fully covered; smaller primes fall back to enumeration within `budget`.
pub fn card_signed_sumset(spec: HyperbolaSpec, budget: u64) -> Result<CardinalityReport> {
    let factorization = factorize(spec.n());
    let mut per_factor = Vec::new();
    let mut uncomputed = Vec::new();
    for (p, t, q) in factorization.prime_powers() {
        let a = spec.a() as i64;
        let entry = if spec.d() == 2 {
            let kind = if spec.m() == 1 {
                SetKind::Difference
            } else {
                SetKind::Sum
            };
            let (count, method) = card_s2_pp_method(a, p, t, kind)?;
            Some((count, method))
        } else if p > 7 {
            Some((q, Method::FullCoverage))
        } else {
            match signed_sumset(spec.reduced_to(q)?, budget) {
                Ok(set) => Some((set.len(), Method::Oracle)),
                Err(Error::EnumerationTooLarge { .. }) => {
                    uncomputed.push((p, t));
                    None
                }
                Err(e) => return Err(e),
            }
        };
        if let Some((count, method)) = entry {
            per_factor.push(FactorCount {
                p,
                t,
                count,
                method,
            });
        }
    }
    if !uncomputed.is_empty() {
        return Err(Error::PartialResult { uncomputed });
    }
    let total = per_factor.iter().map(|f| f.count).product();
    Ok(CardinalityReport {
        spec,
        per_factor,
        total,
    })
}

/// `c2(a; n)` as an exact fraction, with its unreduced numerator and
/// denominator `|S2(a; n)|` and `|D2(a; n)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioValue {
    pub numerator: u128,
    pub denominator: u128,
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub value: Rational,
}

/// `c2(a; p^t)` at a single prime power.
pub fn ratio_c2_pp(a: i64, p: u64, t: u32) -> Result<Rational> {
    let s = card_s2_pp(a, p, t, SetKind::Sum)?;
    let d = card_s2_pp(a, p, t, SetKind::Difference)?;
    Ok(Rational::new(s as u128, d as u128))
}

/// `c2(a; n)` from the closed forms.
pub fn ratio_c2(a: i64, n: u64) -> Result<RatioValue> {
    if n == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    if gcd(reduce(a, n), n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    ratio_from_factorization(a, &factorize(n))
}

pub fn ratio_from_factorization(a: i64, f: &PrimeFactorization) -> Result<RatioValue> {
    ratio_from_prime_powers(a, f.factors())
}

/// `c2(a; prod p^t)` for distinct primes, without forming the modulus itself
/// (which may exceed 64 bits).
pub fn ratio_from_prime_powers(a: i64, factors: &[(u64, u32)]) -> Result<RatioValue> {
    let mut numerator = 1u128;
    let mut denominator = 1u128;
    for &(p, t) in factors {
        let s = card_s2_pp(a, p, t, SetKind::Sum)?;
        let d = card_s2_pp(a, p, t, SetKind::Difference)?;
        numerator = numerator
            .checked_mul(s as u128)
            .ok_or(Error::Overflow("sumset size product"))?;
        denominator = denominator
            .checked_mul(d as u128)
            .ok_or(Error::Overflow("difference set size product"))?;
    }
    Ok(RatioValue {
        numerator,
        denominator,
        value: Rational::new(numerator, denominator),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbola::DEFAULT_BUDGET;
    use num_rational::Ratio;

    fn oracle(a: i64, n: u64, kind: SetKind) -> u64 {
        let spec = match kind {
            SetKind::Sum => HyperbolaSpec::sum(a, n),
            SetKind::Difference => HyperbolaSpec::difference(a, n),
        };
        signed_sumset(spec.unwrap(), DEFAULT_BUDGET).unwrap().len()
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(card_s2_pp(3, 2, 5, SetKind::Difference).unwrap(), 2);
        assert_eq!(card_s2_pp(11, 2, 5, SetKind::Difference).unwrap(), 2);
        assert_eq!(card_s2_pp(7, 2, 5, SetKind::Difference).unwrap(), 4);
        assert_eq!(oracle(7, 32, SetKind::Difference), 4);
        assert_eq!(card_s2_pp(4, 5, 1, SetKind::Sum).unwrap(), 3);
        for a in (1..16).step_by(2) {
            assert_eq!(card_s2_pp(a, 2, 4, SetKind::Sum).unwrap(), 2);
        }
        assert_eq!(card_s2_pp(1, 2, 3, SetKind::Sum).unwrap(), 2);
        assert_eq!(card_s2_pp(3, 2, 3, SetKind::Sum).unwrap(), 1);
    }

    #[test]
    fn prime_power_errors() {
        assert!(matches!(
            card_s2_pp(10, 5, 2, SetKind::Sum),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            card_s2_pp(4, 2, 3, SetKind::Sum),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            card_s2_pp(1, 9, 1, SetKind::Sum),
            Err(Error::NotPrime(9))
        ));
    }

    #[test]
    fn components_examples() {
        // non-residue: nothing divisible by p
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i64 {
                if legendre_unchecked(a as u64, p) == -1 {
                    for t in 1..5 {
                        assert_eq!(card_s2_components(a, p, t).unwrap().1, 0);
                    }
                }
            }
        }
        assert_eq!(card_s2_components(1, 5, 1).unwrap(), (1, 2));
        assert_eq!(card_s2_components(1, 3, 2).unwrap(), (0, 2));
        assert!(matches!(
            card_s2_components(1, 2, 3),
            Err(Error::Unsupported(_))
        ));
    }

    /// Exhaustive definition of the two components.
    fn components_by_enumeration(a: i64, p: u64, t: u32) -> (u64, u64) {
        let q = p.pow(t);
        let squares: std::collections::BTreeSet<u64> = (0..q).map(|x| x * x % q).collect();
        let (mut s1, mut s2) = (0, 0);
        for k in 0..q {
            let v = reduce(k as i64 * k as i64 - a, q);
            if squares.contains(&v) {
                if v % p == 0 {
                    s2 += 1
                } else {
                    s1 += 1
                }
            }
        }
        (s1, s2)
    }

    #[test]
    fn components_match_enumeration() {
        for (p, tmax) in [(3u64, 6u32), (5, 4), (7, 3), (11, 3), (13, 2), (31, 2)] {
            for t in 1..=tmax {
                for a in (1..p.pow(t) as i64).filter(|a| a % p as i64 != 0).take(60) {
                    let (s1, s2) = card_s2_components(a, p, t).unwrap();
                    assert_eq!(
                        (s1, s2),
                        components_by_enumeration(a, p, t),
                        "a={a} p={p} t={t}"
                    );
                    assert_eq!(s1 + s2, card_s2_pp(a, p, t, SetKind::Sum).unwrap());
                }
            }
        }
    }

    #[test]
    fn card_report_examples() {
        let r = card_signed_sumset(HyperbolaSpec::sum(1, 45).unwrap(), DEFAULT_BUDGET).unwrap();
        let per: Vec<_> = r.per_factor.iter().map(|f| (f.p, f.t, f.count)).collect();
        assert_eq!(per, vec![(3, 2, 2), (5, 1, 3)]);
        assert_eq!(r.total, 6);
        assert_eq!(oracle(1, 45, SetKind::Sum), 6);

        let r =
            card_signed_sumset(HyperbolaSpec::new(3, 3, 1, 143).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.total, 143);
        assert!(r
            .per_factor
            .iter()
            .all(|f| f.method == Method::FullCoverage));

        let r = card_signed_sumset(HyperbolaSpec::sum(1, 8).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.total, 2);
        assert_eq!(r.per_factor[0].method, Method::SmallPowerTable);
    }

    #[test]
    fn card_report_oracle_fallback() {
        // 3 * 11: the factor 3 needs enumeration, 11 > 7 is fully covered
        let spec = HyperbolaSpec::new(3, 3, 1, 33).unwrap();
        let r = card_signed_sumset(spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.per_factor[0].method, Method::Oracle);
        assert_eq!(r.per_factor[0].count, 2);
        assert_eq!(r.total, signed_sumset(spec, DEFAULT_BUDGET).unwrap().len());

        let spec = HyperbolaSpec::new(4, 2, 1, 7 * 5 * 11).unwrap();
        let err = card_signed_sumset(spec, 10).unwrap_err();
        assert_eq!(
            err,
            Error::PartialResult {
                uncomputed: vec![(5, 1), (7, 1)]
            }
        );
    }

    #[test]
    fn method_invariant() {
        for n in 2..300u64 {
            for d in [2u32, 3] {
                let spec = HyperbolaSpec::new(d, d, 1, n).unwrap();
                let r = card_signed_sumset(spec, DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    r.total,
                    r.per_factor.iter().map(|f| f.count).product::<u64>()
                );
                for f in &r.per_factor {
                    assert_eq!(f.method == Method::FullCoverage, d > 2 && f.p > 7);
                }
            }
        }
    }

    #[test]
    fn ratio_examples() {
        for k in 1..8 {
            for a in [1i64, 2, 3, 7, 12] {
                assert_eq!(ratio_c2(a, 5u64.pow(k)).unwrap().value, Rational::from(1));
                assert_eq!(
                    ratio_c2(a, 13u64.pow(k.min(5))).unwrap().value,
                    Rational::from(1)
                );
            }
        }
        for a in [1i64, 4, 7] {
            let r = ratio_c2(a, 9).unwrap();
            assert_eq!((r.numerator, r.denominator), (2, 3));
        }
        assert_eq!(ratio_c2(11, 9).unwrap().value, Rational::new(3, 2));
        assert_eq!(ratio_c2(11, 49).unwrap().value, Rational::new(16, 21));
        assert_eq!(ratio_c2(11, 441).unwrap().value, Rational::new(8, 7));
        assert!(matches!(ratio_c2(3, 9), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn reciprocity() {
        for n in 2..2_000u64 {
            for a in (1..n).filter(|&a| gcd(a, n) == 1).step_by(7) {
                let r = ratio_c2(a as i64, n).unwrap().value;
                let s = ratio_c2(-(a as i64), n).unwrap().value;
                assert_eq!(r * s, Rational::from(1), "a={a} n={n}");
            }
        }
    }

    /// `1 - 2 sum_{i < floor(t/2)} p^-(2i+1) + 2/phi(p^t)`
    fn three_mod_four_series(p: u64, t: u32) -> Ratio<i128> {
        let p = p as i128;
        let mut r = Ratio::from(1i128);
        for i in 0..(t / 2) {
            r -= Ratio::new(2, p.pow(2 * i + 1));
        }
        r + Ratio::new(2, (p - 1) * p.pow(t - 1))
    }

    #[test]
    fn three_mod_four_series_agrees() {
        for p in [3u64, 7, 11, 19] {
            let a = (1..p).find(|&a| legendre_unchecked(a, p) == 1).unwrap();
            for t in 1..=8 {
                let r = ratio_c2_pp(a as i64, p, t).unwrap();
                let expected = three_mod_four_series(p, t);
                assert_eq!(
                    Ratio::new(*r.numer() as i128, *r.denom() as i128),
                    expected,
                    "p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn residue_ratio_decreases_in_t() {
        for p in [3u64, 7, 11, 19, 23, 31] {
            for a in (1..p).filter(|&a| legendre_unchecked(a, p) == 1) {
                let rs: Vec<Rational> = (1..=10)
                    .map(|t| ratio_c2_pp(a as i64, p, t).unwrap())
                    .collect();
                assert!(rs.windows(2).all(|w| w[1] < w[0]), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn closed_forms_are_integral() {
        // exact_div asserts divisibility on every branch
        for p in [2u64, 3, 5, 7, 11, 13, 101, 65_537] {
            for t in (1..=20).take_while(|&t| p.checked_pow(t).is_some()) {
                for a in [1i64, 3, 5, 7, -1, -3] {
                    if a.rem_euclid(p as i64) != 0 {
                        card_s2_pp(a, p, t, SetKind::Sum).unwrap();
                        card_s2_pp(a, p, t, SetKind::Difference).unwrap();
                    }
                }
            }
        }
        assert!(matches!(
            card_s2_pp(1, 13, 20, SetKind::Sum),
            Err(Error::Overflow(_))
        ));
    }
}
