//! Solutions of `A^m ± B^n = k` with bounded exponents.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PillaiSolutions {
    pub count: usize,
    /// `(m, n)` pairs sorted ascending.
    pub solutions: Vec<(u64, u64)>,
}

fn validate(a: &BigUint, b: &BigUint, sign: i8) -> Result<()> {
    if *a <= BigUint::one() || *b <= BigUint::one() {
        return Err(Error::InvalidArgument(format!("bases {a}, {b} must exceed 1")));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::InvalidArgument(format!("gcd({a}, {b}) != 1")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")));
    }
    Ok(())
}

fn powers(base: &BigUint, cap: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(cap as usize);
    let mut v = BigUint::one();
    for _ in 0..cap {
        v *= base;
        out.push(BigInt::from(v.clone()));
    }
    out
}

/// All `(m, n)` with `1 <= m, n <= cap` and `A^m + sign B^n = k`.
pub fn pillai_count(a: &BigUint, b: &BigUint, k: &BigUint, sign: i8, cap: u64) -> Result<PillaiSolutions> {
    validate(a, b, sign)?;
    if k.bits() == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = BigInt::from(k.clone());
    let (pa, pb) = (powers(a, cap), powers(b, cap));
    let mut solutions = Vec::new();
    for (m, am) in pa.iter().enumerate() {
        if sign > 0 && *am >= k {
            break;
        }
        for (n, bn) in pb.iter().enumerate() {
            let v = if sign > 0 { am + bn } else { am - bn };
            if v == k {
                solutions.push((m as u64 + 1, n as u64 + 1));
            }
            // increasing in n for +, decreasing for -
            if (sign > 0 && v >= k) || (sign < 0 && v <= k) {
                break;
            }
        }
    }
    Ok(PillaiSolutions {
        count: solutions.len(),
        solutions,
    })
}

/// Every `k` in `[2, k_max]` reached by `A^m + sign B^n` with exponents up
/// to `cap`, with the pairs reaching it. One pass over the power tables
/// replaces a separate search per `k`.
pub fn pillai_census(a: &BigUint, b: &BigUint, sign: i8, cap: u64, k_max: u64) -> Result<BTreeMap<u64, Vec<(u64, u64)>>> {
    validate(a, b, sign)?;
    let (pa, pb) = (powers(a, cap), powers(b, cap));
    let hi = BigInt::from(k_max);
    let two = BigInt::from(2);
    let mut out: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for (m, am) in pa.iter().enumerate() {
        for (n, bn) in pb.iter().enumerate() {
            let v = if sign > 0 { am + bn } else { am - bn };
            if v >= two && v <= hi {
                let k = v.to_u64().expect("k below k_max");
                out.entry(k).or_default().push((m as u64 + 1, n as u64 + 1));
            }
            if (sign > 0 && v > hi) || (sign < 0 && v < two) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn known_counts() {
        let r = pillai_count(&big(3), &big(2), &big(1), -1, 40).unwrap();
        assert_eq!(r.solutions, vec![(1, 1), (2, 3)]);
        let r = pillai_count(&big(2), &big(3), &big(11), 1, 40).unwrap();
        assert_eq!(r.solutions, vec![(1, 2), (3, 1)]);
        let r = pillai_count(&big(2), &big(3), &big(7), 1, 40).unwrap();
        assert_eq!(r.solutions, vec![(2, 1)]);
        assert_eq!(r.count, 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(pillai_count(&big(4), &big(6), &big(2), 1, 10).is_err());
        assert!(pillai_count(&big(1), &big(3), &big(2), 1, 10).is_err());
        assert!(pillai_count(&big(2), &big(3), &big(0), 1, 10).is_err());
        assert!(pillai_count(&big(2), &big(3), &big(5), 0, 10).is_err());
    }

    #[test]
    fn census_matches_single_counts() {
        for sign in [1, -1] {
            let census = pillai_census(&big(3), &big(2), sign, 20, 5000).unwrap();
            for k in 2..=5000u64 {
                let single = pillai_count(&big(3), &big(2), &big(k), sign, 20).unwrap();
                let mut from_census = census.get(&k).cloned().unwrap_or_default();
                from_census.sort();
                assert_eq!(single.solutions, from_census, "k = {k}, sign = {sign}");
            }
        }
    }
}
