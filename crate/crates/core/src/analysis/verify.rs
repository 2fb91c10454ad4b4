use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{gcd, FactorSieve};
use crate::cardinality::{card_s2_pp, ratio_c2, SetKind};
use crate::error::Result;
use crate::hyperbola::PlanarOracle;
use crate::parallel;
use crate::report::Record;

/// Composite sweeps check every `a` up to this modulus and sample above it.
pub const EXHAUSTIVE_COMPOSITE_LIMIT: u64 = 300;
pub const SAMPLES_PER_MODULUS: usize = 20;
const SAMPLE_SEED: u64 = 0x6d6f_6468_7970;

/// A closed-form count that disagrees with enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub a: u64,
    pub n: u64,
    pub kind: &'static str,
    pub formula: u128,
    pub oracle: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub scope: &'static str,
    pub bound: u64,
    pub moduli: u64,
    pub cases: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl Record for VerifySummary {
    const HEADER: &'static [&'static str] = &["scope", "bound", "moduli", "cases", "mismatches"];

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.scope.to_string(),
            self.bound.to_string(),
            self.moduli.to_string(),
            self.cases.to_string(),
            self.mismatches.len().to_string(),
        ]]
    }
}

fn mismatch(kind: &'static str, a: u64, n: u64, formula: u128, oracle: u128) -> Option<Mismatch> {
    (formula != oracle).then_some(Mismatch {
        a,
        n,
        kind,
        formula,
        oracle,
    })
}

/// Every prime power `q <= max_pp` and every unit `a` mod `q`: closed-form
/// `|S2|` and `|D2|` against enumeration.
pub fn verify_prime_powers(max_pp: u64) -> Result<VerifySummary> {
    let sieve = FactorSieve::new(max_pp.max(2));
    let mut powers = Vec::new();
    for p in sieve.primes() {
        let (mut q, mut t) = (p, 1u32);
        while q <= max_pp {
            powers.push((p, t, q));
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            t += 1;
        }
    }
    powers.sort_unstable_by_key(|&(_, _, q)| q);
    let parts = parallel::map_slice(&powers, |&(p, t, q)| -> Result<(u64, Vec<Mismatch>)> {
        let oracle = PlanarOracle::new(q)?;
        let mut bad = Vec::new();
        for &a in oracle.units() {
            let (sums, diffs) = oracle.sets(a as i64)?;
            let s = card_s2_pp(a as i64, p, t, SetKind::Sum)?;
            let d = card_s2_pp(a as i64, p, t, SetKind::Difference)?;
            bad.extend(mismatch("sum", a, q, s as u128, sums.len() as u128));
            bad.extend(mismatch("difference", a, q, d as u128, diffs.len() as u128));
        }
        Ok((oracle.units().len() as u64, bad))
    });
    collect("prime-powers", max_pp, powers.len() as u64, parts)
}

/// Every `n` in `[2, max_n]`: totals composed over prime powers against
/// enumeration mod `n`. All units are checked for small `n`, a fixed-seed
/// sample of them above [`EXHAUSTIVE_COMPOSITE_LIMIT`].
pub fn verify_composites(max_n: u64) -> Result<VerifySummary> {
    let moduli: Vec<u64> = (2..=max_n).collect();
    let parts = parallel::map_slice(&moduli, |&n| -> Result<(u64, Vec<Mismatch>)> {
        let oracle = PlanarOracle::new(n)?;
        let units = oracle.units();
        let chosen: Vec<u64> =
            if n <= EXHAUSTIVE_COMPOSITE_LIMIT || units.len() <= SAMPLES_PER_MODULUS {
                units.to_vec()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ n);
                let mut idx = sample(&mut rng, units.len(), SAMPLES_PER_MODULUS).into_vec();
                idx.sort_unstable();
                idx.into_iter().map(|i| units[i]).collect()
            };
        let mut bad = Vec::new();
        for &a in &chosen {
            debug_assert_eq!(gcd(a, n), 1);
            let (sums, diffs) = oracle.sets(a as i64)?;
            let r = ratio_c2(a as i64, n)?;
            bad.extend(mismatch("sum", a, n, r.numerator, sums.len() as u128));
            bad.extend(mismatch(
                "difference",
                a,
                n,
                r.denominator,
                diffs.len() as u128,
            ));
        }
        Ok((chosen.len() as u64, bad))
    });
    collect("composites", max_n, moduli.len() as u64, parts)
}

fn collect(
    scope: &'static str,
    bound: u64,
    moduli: u64,
    parts: Vec<Result<(u64, Vec<Mismatch>)>>,
) -> Result<VerifySummary> {
    let mut summary = VerifySummary {
        scope,
        bound,
        moduli,
        cases: 0,
        mismatches: Vec::new(),
    };
    for part in parts {
        let (cases, bad) = part?;
        summary.cases += cases;
        summary.mismatches.extend(bad);
    }
    Ok(summary)
}
