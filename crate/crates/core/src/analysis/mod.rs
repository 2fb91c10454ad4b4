//! Scans and checks built on the closed forms and the enumeration oracle.

mod coverage;
mod density;
mod dominance;
mod primorial;
mod solver;
mod verify;

pub use coverage::{coverage_check, CoverageReport};
pub use density::{
    density_bound, density_report, in_e_a, k_a, DensityReport, DENSITY_PRODUCT_LIMIT,
};
pub use dominance::{
    dominance_report, dominance_scan, Classification, DominanceReport, FactorRatio, ScanOutput,
};
pub use primorial::{primes_3_mod_4, primorial_series, PrimorialReport, PrimorialRow};
pub use solver::{solve_sum_product, SumProductTriple};
pub use verify::{verify_composites, verify_prime_powers, Mismatch, VerifySummary};
