//! Brute-force enumeration of modular hyperbolas and their signed sumsets.
//!
//! This module is the oracle the closed forms in [`crate::cardinality`] are
//! checked against, so it only ever enumerates: no counting shortcuts.

mod residue_set;

pub use residue_set::ResidueSet;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{factorize, gcd, inv_mod, mul_mod, reduce};
use crate::error::{Error, Result};
use crate::parallel;

/// Default cap on the number of enumerated `(d-1)`-tuples.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Names the hyperbola `H_d(a; n)` together with the signed sumset that has
/// `m` leading plus signs.
///
/// `m = 0` (all minus signs) is accepted as a natural extension of the
/// signed-sumset definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HyperbolaSpec {
    d: u32,
    m: u32,
    a: u64,
    n: u64,
}

impl HyperbolaSpec {
    pub fn new(d: u32, m: u32, a: i64, n: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!(
                "dimension {d} must be at least 2"
            )));
        }
        if m > d {
            return Err(Error::InvalidInput(format!(
                "plus-sign count {m} exceeds d = {d}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "modulus {n} must be at least 2"
            )));
        }
        let a_red = reduce(a, n);
        if gcd(a_red, n) != 1 {
            return Err(Error::NotCoprime { a, n });
        }
        Ok(HyperbolaSpec { d, m, a: a_red, n })
    }

    /// `S2(a; n)`: the planar sumset, `d = 2, m = 2`.
    pub fn sum(a: i64, n: u64) -> Result<Self> {
        HyperbolaSpec::new(2, 2, a, n)
    }

    /// `D2(a; n)`: the planar difference set, `d = 2, m = 1`.
    pub fn difference(a: i64, n: u64) -> Result<Self> {
        HyperbolaSpec::new(2, 1, a, n)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `a`, reduced into `[1, n)`.
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The same hyperbola with `a` reduced modulo a divisor `q` of `n`.
    pub fn reduced_to(&self, q: u64) -> Result<Self> {
        HyperbolaSpec::new(self.d, self.m, (self.a % q) as i64, q)
    }

    /// Sign of coordinate `i` (0-based) in the signed sum.
    fn positive(&self, i: u32) -> bool {
        i < self.m
    }

    /// `|H_d(a; n)| = phi(n)^(d-1)`, the number of tuples an enumeration visits.
    pub fn point_count(&self) -> u128 {
        let phi = factorize(self.n).totient() as u128;
        (1..self.d)
            .try_fold(1u128, |acc, _| acc.checked_mul(phi))
            .unwrap_or(u128::MAX)
    }

    fn check_budget(&self, budget: u64) -> Result<()> {
        let points = self.point_count();
        if points > budget as u128 {
            return Err(Error::EnumerationTooLarge { points, budget });
        }
        Ok(())
    }
}

/// Units of `Z/nZ` ascending, with their inverses at the same index.
struct UnitTable {
    units: Vec<u64>,
    inverses: Vec<u64>,
}

impl UnitTable {
    fn new(n: u64) -> Self {
        let units: Vec<u64> = (1..n).filter(|&x| gcd(x, n) == 1).collect();
        let inverses = units
            .iter()
            .map(|&x| inv_mod(x, n).expect("unit"))
            .collect();
        UnitTable { units, inverses }
    }
}

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    if n <= u32::MAX as u64 {
        a * b % n
    } else {
        mul_mod(a, b, n)
    }
}

/// Streams the points of `H_d(a; n)` in lexicographic order of the first
/// `d - 1` coordinates; the last coordinate is `a (x_1 ... x_{d-1})^-1`.
pub struct Points {
    spec: HyperbolaSpec,
    table: UnitTable,
    index: Vec<usize>,
    done: bool,
}

impl Iterator for Points {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let n = self.spec.n;
        let mut point = Vec::with_capacity(self.spec.d as usize);
        let mut inv_prod = 1u64;
        for &i in &self.index {
            point.push(self.table.units[i]);
            inv_prod = mulmod(inv_prod, self.table.inverses[i], n);
        }
        point.push(mulmod(self.spec.a, inv_prod, n));
        // odometer, last free coordinate fastest
        self.done = true;
        for slot in self.index.iter_mut().rev() {
            *slot += 1;
            if *slot < self.table.units.len() {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(point)
    }
}

/// Streams the points of `H_d(a; n)`.
pub fn enumerate_points(spec: HyperbolaSpec, budget: u64) -> Result<Points> {
    spec.check_budget(budget)?;
    let table = UnitTable::new(spec.n);
    let done = table.units.is_empty();
    Ok(Points {
        spec,
        index: vec![0; spec.d as usize - 1],
        table,
        done,
    })
}

/// Materializes `H_2(a; n)` as `(x, y)` pairs, e.g. for plotting.
pub fn planar_points(a: i64, n: u64, budget: u64) -> Result<Vec<(u64, u64)>> {
    let spec = HyperbolaSpec::sum(a, n)?;
    Ok(enumerate_points(spec, budget)?
        .map(|p| (p[0], p[1]))
        .collect())
}

/// `S_d(m; a; n)`: every value `x_1 + ... + x_m - x_{m+1} - ... - x_d mod n`
/// over the points of `H_d(a; n)`.
///
/// The leading coordinate is split into blocks processed independently and
/// merged by union, so the result does not depend on scheduling. Enumeration
/// stops early once every residue has been seen.
pub fn signed_sumset(spec: HyperbolaSpec, budget: u64) -> Result<ResidueSet> {
    spec.check_budget(budget)?;
    let table = UnitTable::new(spec.n);
    let phi = table.units.len() as u64;
    let threads = parallel::current_threads();
    let blocks = parallel::blocks(0, phi, threads);
    let mut acc = ResidueSet::empty(spec.n);
    for wave in blocks.chunks(threads.max(1)) {
        let parts = parallel::map_slice(wave, |&(lo, hi)| sumset_block(&spec, &table, lo, hi));
        for part in &parts {
            acc.union_with(part);
        }
        if acc.is_full() {
            break;
        }
    }
    Ok(acc)
}

/// Signed sums over points whose leading coordinate index lies in `[lo, hi)`.
fn sumset_block(spec: &HyperbolaSpec, table: &UnitTable, lo: u64, hi: u64) -> ResidueSet {
    let n = spec.n;
    let d = spec.d as usize;
    let units = &table.units;
    let invs = &table.inverses;
    let phi = units.len();
    let mut set = ResidueSet::empty(n);
    let signed = |x: u64, i: usize| {
        if spec.positive(i as u32) {
            x
        } else {
            (n - x) % n
        }
    };

    let last_pos = spec.positive(d as u32 - 1);
    let second_last_pos = spec.positive(d as u32 - 2);

    for i0 in lo as usize..hi as usize {
        if d == 2 {
            let x = units[i0];
            let y = mulmod(spec.a, invs[i0], n);
            set.insert((signed(x, 0) + signed(y, 1)) % n);
            continue;
        }
        // middle coordinates 1..d-2 via an odometer (empty when d == 3)
        let mut mid = vec![0usize; d - 3];
        loop {
            let mut partial = signed(units[i0], 0);
            let mut inv_prod = invs[i0];
            for (k, &j) in mid.iter().enumerate() {
                partial = (partial + signed(units[j], k + 1)) % n;
                inv_prod = mulmod(inv_prod, invs[j], n);
            }
            let c = mulmod(spec.a, inv_prod, n);
            for j in 0..phi {
                let x = units[j];
                let y = mulmod(c, invs[j], n);
                let sx = if second_last_pos { x } else { n - x };
                let sy = if last_pos { y } else { n - y };
                set.insert((partial + sx + sy) % n);
            }
            if set.is_full() {
                return set;
            }
            let mut carried = true;
            for slot in mid.iter_mut().rev() {
                *slot += 1;
                if *slot < phi {
                    carried = false;
                    break;
                }
                *slot = 0;
            }
            if carried {
                break;
            }
        }
    }
    set
}

/// Enumerates `S2(a; n)` and `D2(a; n)` together for many `a` at a fixed
/// modulus, sharing one table of units and inverses.
pub struct PlanarOracle {
    n: u64,
    table: UnitTable,
}

impl PlanarOracle {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "modulus {n} must be at least 2"
            )));
        }
        Ok(PlanarOracle {
            n,
            table: UnitTable::new(n),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// The units of `Z/nZ`, ascending.
    pub fn units(&self) -> &[u64] {
        &self.table.units
    }

    /// `(S2(a; n), D2(a; n))` by walking every point of `H_2(a; n)`.
    pub fn sets(&self, a: i64) -> Result<(ResidueSet, ResidueSet)> {
        let n = self.n;
        let a_red = reduce(a, n);
        if gcd(a_red, n) != 1 {
            return Err(Error::NotCoprime { a, n });
        }
        let mut sums = ResidueSet::empty(n);
        let mut diffs = ResidueSet::empty(n);
        for (&x, &inv) in self.table.units.iter().zip(&self.table.inverses) {
            let y = mulmod(a_red, inv, n);
            sums.insert((x + y) % n);
            diffs.insert((x + n - y) % n);
        }
        Ok((sums, diffs))
    }
}

/// The unreduced planar sets `S2(a; n) = {x + y}` and `D2(a; n) = {x - y}`
/// as plain integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnreducedSets {
    pub sums: BTreeSet<u64>,
    pub differences: BTreeSet<i64>,
}

pub fn unreduced_sum_diff(a: i64, n: u64, budget: u64) -> Result<UnreducedSets> {
    let spec = HyperbolaSpec::sum(a, n)?;
    let mut sets = UnreducedSets {
        sums: BTreeSet::new(),
        differences: BTreeSet::new(),
    };
    for p in enumerate_points(spec, budget)? {
        sets.sums.insert(p[0] + p[1]);
        sets.differences.insert(p[0] as i64 - p[1] as i64);
    }
    Ok(sets)
}
