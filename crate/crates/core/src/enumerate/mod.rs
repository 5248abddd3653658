//! Complete enumeration of the solutions of `a^x + b^y = c^z` below a cap.
//!
//! The search runs over pairs `(x, z)` with `x ln a < z ln c`, where `a` is
//! the larger of the two summand bases, and recovers `y` from the exact
//! difference `c^z - a^x`. Residue filters discard almost every pair before
//! any big-integer work happens; they never discard a solution.

mod sieve;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ln_biguint;
use crate::bounds::{solution_bound, BoundReport};
use crate::error::{Error, Result};
use crate::model::{pow, Instance, Solution};
use sieve::{filter_primes, Filters};

/// Default ceiling on the number of candidate pairs `count_solutions` accepts.
pub const DEFAULT_VOLUME_LIMIT: f64 = 1e9;

/// Largest cap `brute_force_oracle` accepts.
pub const ORACLE_MAX_CAP: u64 = 500;

/// Residue filter settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Largest small prime used as a filter modulus.
    pub prime_cap: u64,
    /// At most this many small primes are used.
    pub prime_count: usize,
    /// Also filter modulo the largest powers of `a`, `b`, `c` below 2^16.
    pub base_power_moduli: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            prime_cap: 64,
            prime_count: 12,
            base_power_moduli: true,
        }
    }
}

impl SieveConfig {
    /// No filtering at all: every candidate goes to the exact check.
    pub fn disabled() -> Self {
        SieveConfig {
            prime_cap: 3,
            prime_count: 0,
            base_power_moduli: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.prime_cap < 3 {
            return Err(Error::InvalidArgument(format!(
                "prime_cap = {} must be at least 3",
                self.prime_cap
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SieveStats {
    pub candidates_examined: u64,
    pub candidates_surviving_sieve: u64,
    pub exact_checks: u64,
}

impl SieveStats {
    fn merge(self, o: SieveStats) -> SieveStats {
        SieveStats {
            candidates_examined: self.candidates_examined + o.candidates_examined,
            candidates_surviving_sieve: self.candidates_surviving_sieve + o.candidates_surviving_sieve,
            exact_checks: self.exact_checks + o.exact_checks,
        }
    }
}

/// Every solution with `max{x, y, z} <= cap`, sorted by `(z, x, y)`.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub instance: Instance,
    pub cap: u64,
    pub solutions: Vec<Solution>,
    pub stats: SieveStats,
    /// Filter moduli in the order they were applied.
    pub moduli: Vec<u32>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// Exponent `y >= 1` with `b^y = n`, if there is one.
///
/// The guess `round(ln n / ln b)` is off by at most one for any `n` that
/// fits in memory, so only it and its two neighbours are compared exactly.
pub fn is_power_of(n: &BigUint, b: &BigUint) -> Option<u64> {
    if *b <= BigUint::one() || n < b {
        return None;
    }
    if !(n % b).is_zero() {
        return None;
    }
    let guess = (ln_biguint(n) / ln_biguint(b)).round() as u64;
    (guess.saturating_sub(1).max(1)..=guess + 1).find(|&y| pow(b, y) == *n)
}

/// All solutions with `1 <= x, y, z <= cap`.
pub fn enumerate_solutions(inst: &Instance, cap: u64, cfg: &SieveConfig) -> Result<SolutionSet> {
    if cap < 1 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    cfg.validate()?;

    // Iterate over the larger summand base: fewer exponents fit below c^z.
    let swap = inst.b() > inst.a();
    let (a, b, c) = if swap {
        (inst.b(), inst.a(), inst.c())
    } else {
        (inst.a(), inst.b(), inst.c())
    };
    let primes = filter_primes(a, b, c, cfg.prime_cap, cfg.prime_count);
    let filters = Filters::build(a, b, c, cap, &primes, cfg.base_power_moduli);
    let ratio = ln_biguint(c) / ln_biguint(a);

    let slices = z_slices(cap, ratio, rayon::current_num_threads() * 8);
    let parts: Vec<(Vec<Solution>, SieveStats)> = slices
        .par_iter()
        .map(|&(z0, z1)| search_slice(a, b, c, cap, ratio, &filters, z0, z1))
        .collect();

    let mut stats = SieveStats::default();
    let mut solutions = Vec::new();
    for (sols, st) in parts {
        stats = stats.merge(st);
        solutions.extend(sols.into_iter().map(|s| {
            if swap {
                Solution::new(s.y, s.x, s.z)
            } else {
                s
            }
        }));
    }
    solutions.sort();
    solutions.dedup();
    Ok(SolutionSet {
        instance: inst.clone(),
        cap,
        solutions,
        stats,
        moduli: filters.moduli().to_vec(),
    })
}

/// Largest `x` worth trying at exponent `z`. The float estimate is padded by
/// one; pairs with `a^x >= c^z` are discarded exactly.
fn x_limit(z: u64, ratio: f64, cap: u64) -> u64 {
    let est = (z as f64 * ratio * (1.0 + 1e-12)).floor();
    if est >= cap as f64 {
        cap
    } else {
        (est as u64 + 1).min(cap)
    }
}

/// Number of candidate pairs the search visits for this cap.
pub fn search_volume(inst: &Instance, cap: u64) -> f64 {
    let (la, lb, lc) = inst.ln_f64();
    let ratio = lc / la.max(lb);
    (1..=cap).map(|z| x_limit(z, ratio, cap) as f64).sum()
}

/// Splits `1..=cap` into contiguous z-ranges of roughly equal candidate
/// count.
fn z_slices(cap: u64, ratio: f64, pieces: usize) -> Vec<(u64, u64)> {
    let total: f64 = (1..=cap).map(|z| x_limit(z, ratio, cap) as f64).sum();
    let target = (total / pieces.max(1) as f64).max(4096.0);
    let mut out = Vec::new();
    let (mut start, mut acc) = (1, 0.0);
    for z in 1..=cap {
        acc += x_limit(z, ratio, cap) as f64;
        if acc >= target || z == cap {
            out.push((start, z));
            start = z + 1;
            acc = 0.0;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search_slice(
    a: &BigUint,
    b: &BigUint,
    c: &BigUint,
    cap: u64,
    ratio: f64,
    filters: &Filters,
    z0: u64,
    z1: u64,
) -> (Vec<Solution>, SieveStats) {
    let mut stats = SieveStats::default();
    let mut found = Vec::new();
    let mut cz = pow(c, z0);
    for z in z0..=z1 {
        if z > z0 {
            cz *= c;
        }
        let xmax = x_limit(z, ratio, cap);
        stats.candidates_examined += xmax;
        for x in 1..=xmax {
            if !filters.passes(x, z) {
                continue;
            }
            stats.candidates_surviving_sieve += 1;
            let ax = pow(a, x);
            if ax >= cz {
                continue;
            }
            stats.exact_checks += 1;
            if let Some(y) = is_power_of(&(&cz - &ax), b) {
                if y <= cap {
                    found.push(Solution::new(x, y, z));
                }
            }
        }
    }
    (found, stats)
}

/// Complete count `N(a, b, c)` with the unconditional exponent cap.
#[derive(Clone, Debug)]
pub struct SolutionCount {
    pub count: usize,
    pub set: SolutionSet,
    pub report: BoundReport,
}

/// Enumerates up to the unconditional cap, refusing searches that would
/// visit more than `volume_limit` candidate pairs.
pub fn count_solutions(inst: &Instance, cfg: &SieveConfig, volume_limit: f64) -> Result<SolutionCount> {
    let report = solution_bound(inst);
    if all_odd(inst) {
        // odd + odd is even and cannot equal an odd power
        return Ok(SolutionCount {
            count: 0,
            set: SolutionSet {
                instance: inst.clone(),
                cap: report.bound,
                solutions: Vec::new(),
                stats: SieveStats::default(),
                moduli: Vec::new(),
            },
            report,
        });
    }
    let volume = search_volume(inst, report.bound);
    if volume > volume_limit {
        return Err(Error::ResourceLimit {
            volume,
            limit: volume_limit,
        });
    }
    let set = enumerate_solutions(inst, report.bound, cfg)?;
    Ok(SolutionCount {
        count: set.len(),
        set,
        report,
    })
}

fn all_odd(inst: &Instance) -> bool {
    [inst.a(), inst.b(), inst.c()].iter().all(|v| v.bit(0))
}

/// Naive triple loop with exact arithmetic and no filtering.
pub fn brute_force_oracle(inst: &Instance, cap: u64) -> Result<SolutionSet> {
    if cap > ORACLE_MAX_CAP {
        return Err(Error::InvalidArgument(format!(
            "oracle cap {cap} exceeds {ORACLE_MAX_CAP}"
        )));
    }
    if cap < 1 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let mut solutions = Vec::new();
    let mut examined = 0;
    let mut cz = BigUint::one();
    for z in 1..=cap {
        cz *= inst.c();
        let mut ax = BigUint::one();
        for x in 1..=cap {
            ax *= inst.a();
            if ax >= cz {
                break;
            }
            let mut by = BigUint::one();
            for y in 1..=cap {
                by *= inst.b();
                examined += 1;
                let lhs = &ax + &by;
                if lhs == cz {
                    solutions.push(Solution::new(x, y, z));
                }
                if lhs >= cz {
                    break;
                }
            }
        }
    }
    solutions.sort();
    Ok(SolutionSet {
        instance: inst.clone(),
        cap,
        solutions,
        stats: SieveStats {
            candidates_examined: examined,
            candidates_surviving_sieve: examined,
            exact_checks: examined,
        },
        moduli: Vec::new(),
    })
}
