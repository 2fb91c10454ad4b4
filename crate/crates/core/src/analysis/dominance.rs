use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::arith::{gcd, reduce, FactorSieve, PrimeFactorization};
use crate::cardinality::{ratio_c2_pp, ratio_from_factorization};
use crate::error::Result;
use crate::parallel;
use crate::report::{decimal6, format_rational, serialize_rational, to_f64, Record};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    SumDominant,
    DifferenceDominant,
    Balanced,
}

impl Classification {
    pub fn of(c2: &Rational) -> Self {
        match c2.cmp(&Rational::from(1)) {
            Ordering::Greater => Classification::SumDominant,
            Ordering::Less => Classification::DifferenceDominant,
            Ordering::Equal => Classification::Balanced,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::SumDominant => "sum-dominant",
            Classification::DifferenceDominant => "difference-dominant",
            Classification::Balanced => "balanced",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorRatio {
    pub p: u64,
    pub t: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub a: i64,
    pub n: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub c2: Rational,
    pub c2_decimal: f64,
    pub classification: Classification,
    pub factor_breakdown: Vec<FactorRatio>,
}

impl DominanceReport {
    pub fn from_factorization(a: i64, f: &PrimeFactorization) -> Result<Self> {
        let c2 = ratio_from_factorization(a, f)?.value;
        let factor_breakdown = f
            .factors()
            .iter()
            .map(|&(p, t)| {
                Ok(FactorRatio {
                    p,
                    t,
                    ratio: ratio_c2_pp(a, p, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DominanceReport {
            a,
            n: f.n(),
            c2_decimal: to_f64(&c2),
            classification: Classification::of(&c2),
            c2,
            factor_breakdown,
        })
    }
}

impl Record for DominanceReport {
    const HEADER: &'static [&'static str] = &["a", "n", "c2", "c2_decimal", "classification"];

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.a.to_string(),
            self.n.to_string(),
            format_rational(&self.c2),
            decimal6(&self.c2),
            self.classification.to_string(),
        ]]
    }
}

/// `c2(a; n)` with its classification and per-prime-power factors.
pub fn dominance_report(a: i64, n: u64) -> Result<DominanceReport> {
    crate::cardinality::ratio_c2(a, n)?;
    DominanceReport::from_factorization(a, &crate::arith::factorize(n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutput {
    /// One report per admitted `n`, ascending.
    pub reports: Vec<DominanceReport>,
    /// Moduli in range not coprime to `a`.
    pub skipped: u64,
    /// Coprime moduli dropped because `c2` did not exceed the threshold.
    pub below_threshold: u64,
}

/// Dominance reports for every `n` in `[2, n_max]` coprime to `a`, from the
/// closed forms. With a threshold, only `n` with `c2(a; n) > threshold` are
/// kept. Output order is ascending in `n` regardless of worker count.
pub fn dominance_scan(a: i64, n_max: u64, threshold: Option<Rational>) -> Result<ScanOutput> {
    let sieve = FactorSieve::new(n_max);
    let blocks = parallel::blocks(2, n_max.saturating_add(1), parallel::current_threads());
    let parts = parallel::map_slice(&blocks, |&(lo, hi)| -> Result<ScanOutput> {
        let mut out = ScanOutput {
            reports: Vec::new(),
            skipped: 0,
            below_threshold: 0,
        };
        for n in lo..hi {
            if gcd(reduce(a, n), n) != 1 {
                out.skipped += 1;
                continue;
            }
            let report = DominanceReport::from_factorization(a, &sieve.factorize(n))?;
            match threshold {
                Some(l) if report.c2 <= l => out.below_threshold += 1,
                _ => out.reports.push(report),
            }
        }
        Ok(out)
    });
    let mut merged = ScanOutput {
        reports: Vec::new(),
        skipped: 0,
        below_threshold: 0,
    };
    for part in parts {
        let part = part?;
        merged.reports.extend(part.reports);
        merged.skipped += part.skipped;
        merged.below_threshold += part.below_threshold;
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = dominance_report(11, 441).unwrap();
        assert_eq!(r.c2, Rational::new(8, 7));
        assert_eq!(r.classification, Classification::SumDominant);
        let ratios: Vec<_> = r.factor_breakdown.iter().map(|f| f.ratio).collect();
        assert_eq!(ratios, vec![Rational::new(3, 2), Rational::new(16, 21)]);

        // a = 4 is a square mod 3; 3^2 * 7^2
        assert_eq!(
            dominance_report(4, 441).unwrap().classification,
            Classification::DifferenceDominant
        );
        for k in 1..6 {
            assert_eq!(
                dominance_report(3, 5u64.pow(k)).unwrap().classification,
                Classification::Balanced
            );
        }
    }

    #[test]
    fn scan_is_ascending_and_counts_skips() {
        let out = dominance_scan(6, 100, None).unwrap();
        let ns: Vec<u64> = out.reports.iter().map(|r| r.n).collect();
        assert!(ns.windows(2).all(|w| w[0] < w[1]));
        assert!(ns.iter().all(|&n| gcd(n, 6) == 1));
        assert_eq!(ns.len() as u64 + out.skipped, 99);

        let filtered = dominance_scan(6, 100, Some(Rational::from(1))).unwrap();
        assert!(filtered.reports.iter().all(|r| r.c2 > Rational::from(1)));
        assert_eq!(
            filtered.reports.len() as u64 + filtered.below_threshold,
            ns.len() as u64
        );
    }

    #[test]
    fn scan_matches_pointwise_reports() {
        let out = dominance_scan(-7, 500, None).unwrap();
        for r in &out.reports {
            assert_eq!(r, &dominance_report(-7, r.n).unwrap());
        }
    }
}
