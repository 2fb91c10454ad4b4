use serde::Serialize;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::hyperbola::{signed_sumset, HyperbolaSpec, ResidueSet};
use crate::report::Record;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub spec: HyperbolaSpec,
    pub covered: bool,
    /// Residues mod `n` never attained by the signed sum.
    pub missing: ResidueSet,
    /// Every prime factor of `n` exceeds 7.
    pub theorem_applies: bool,
}

impl Record for CoverageReport {
    const HEADER: &'static [&'static str] = &[
        "d",
        "m",
        "a",
        "n",
        "covered",
        "missing_count",
        "missing",
        "theorem_applies",
    ];

    fn rows(&self) -> Vec<Vec<String>> {
        let missing: Vec<String> = self.missing.iter().map(|v| v.to_string()).collect();
        vec![vec![
            self.spec.d().to_string(),
            self.spec.m().to_string(),
            self.spec.a().to_string(),
            self.spec.n().to_string(),
            self.covered.to_string(),
            self.missing.len().to_string(),
            missing.join(" "),
            self.theorem_applies.to_string(),
        ]]
    }
}

/// Enumerates `S_d(m; a; n)` for `d >= 3` and lists the residues it misses.
pub fn coverage_check(spec: HyperbolaSpec, budget: u64) -> Result<CoverageReport> {
    if spec.d() < 3 {
        return Err(Error::InvalidInput(format!(
            "coverage needs d >= 3, got {}",
            spec.d()
        )));
    }
    let set = signed_sumset(spec, budget)?;
    let theorem_applies = factorize(spec.n()).least_prime().is_some_and(|p| p > 7);
    let report = CoverageReport {
        spec,
        covered: set.is_full(),
        missing: set.complement(),
        theorem_applies,
    };
    if report.theorem_applies && !report.covered {
        return Err(Error::InvariantViolation(format!(
            "{} residues uncovered for {:?}",
            report.missing.len(),
            spec
        )));
    }
    Ok(report)
}
