//! Least exponents with `r^n = ±1 (mod m)` and the divisibility facts they
//! satisfy.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{CanonicalForm, CanonicalSolution};
use crate::error::{Error, Result};
use crate::model::pow;

/// Least `n1 >= 1` with `r^n1 = ±1 (mod m)` and the sign `delta1` that occurs.
///
/// The set of `n` with `r^n = ±1` is a subgroup of the integers, so every
/// such `n` is a multiple of `n1`. The scan stops at the first hit, which
/// happens no later than the multiplicative order of `r`.
pub fn least_pm_order(r: &BigUint, m: &BigUint) -> Result<(u64, i8)> {
    if *m <= BigUint::one() {
        return Err(Error::InvalidArgument(format!("modulus {m} must exceed 1")));
    }
    if !r.gcd(m).is_one() {
        return Err(Error::Precondition(format!("gcd({r}, {m}) != 1")));
    }
    let minus_one = m - 1u32;
    let r = r % m;
    let mut v = r.clone();
    let mut n = 1u64;
    loop {
        if v.is_one() {
            return Ok((n, 1));
        }
        if v == minus_one {
            return Ok((n, -1));
        }
        v = (v * &r) % m;
        n += 1;
    }
}

/// `r`, `m` and the order data `(n1, delta1)`, reused across many `n`.
#[derive(Clone, Debug)]
pub struct OrderWitness {
    r: BigUint,
    m: BigUint,
    pub n1: u64,
    pub delta1: i8,
    /// `r^n1 - delta1`.
    base_gap: BigInt,
}

/// Outcome of checking the order facts for one exponent `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCheck {
    pub n: u64,
    pub n1: u64,
    pub delta1: i8,
    /// `Some(δ)` when `r^n = δ (mod m)` with `δ = ±1`.
    pub residue_sign: Option<i8>,
    /// `r^n = ±1 (mod m)` exactly when `n1 | n`.
    pub iff_holds: bool,
    /// `r^n1 - delta1 | r^n - δ`; `None` when it does not apply (`n1` does
    /// not divide `n`, or `r^n1 = delta1`).
    pub divides: Option<bool>,
}

impl DivisibilityCheck {
    pub fn holds(&self) -> bool {
        self.iff_holds && self.divides != Some(false)
    }
}

impl OrderWitness {
    pub fn new(r: &BigUint, m: &BigUint) -> Result<Self> {
        let (n1, delta1) = least_pm_order(r, m)?;
        let base_gap = BigInt::from(pow(r, n1)) - delta1;
        Ok(OrderWitness {
            r: r.clone(),
            m: m.clone(),
            n1,
            delta1,
            base_gap,
        })
    }

    /// Checks the facts for `n` given `r_pow_n = r^n`.
    pub fn check_power(&self, n: u64, r_pow_n: &BigUint) -> DivisibilityCheck {
        let res = r_pow_n % &self.m;
        let residue_sign = if res.is_one() {
            Some(1)
        } else if res == &self.m - 1u32 {
            Some(-1)
        } else {
            None
        };
        let multiple = n % self.n1 == 0;
        let iff_holds = residue_sign.is_some() == multiple;
        let divides = match residue_sign {
            Some(d) if multiple && !self.base_gap.is_zero() => {
                let target: BigInt = BigInt::from(r_pow_n.clone()) - d;
                Some(target.is_multiple_of(&self.base_gap))
            }
            _ => None,
        };
        DivisibilityCheck {
            n,
            n1: self.n1,
            delta1: self.delta1,
            residue_sign,
            iff_holds,
            divides,
        }
    }

    pub fn check(&self, n: u64) -> DivisibilityCheck {
        self.check_power(n, &pow(&self.r, n))
    }
}

/// Verifies both order facts for `r`, `m` and one exponent `n >= 1`.
pub fn check_order_divisibility(r: &BigUint, m: &BigUint, n: u64) -> Result<DivisibilityCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("exponent n must be positive".into()));
    }
    Ok(OrderWitness::new(r, m)?.check(n))
}

/// `(Z1, n1, delta1, f)` with `A^n1 = C^Z1 f + delta1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderData {
    pub z1: u64,
    pub n1: u64,
    pub delta1: i8,
    #[serde(serialize_with = "crate::lemma_lab::decimal_string")]
    pub f: BigUint,
}

impl OrderData {
    /// Order data of `A` modulo `C^z1`.
    pub fn compute(form: &CanonicalForm, z1: u64) -> Result<Self> {
        if z1 == 0 {
            return Err(Error::InvalidArgument("Z1 must be positive".into()));
        }
        let m = pow(form.c(), z1);
        let (n1, delta1) = least_pm_order(form.a(), &m)?;
        let shifted = BigInt::from(pow(form.a(), n1)) - delta1;
        let (f, rem) = shifted.div_rem(&BigInt::from(m));
        if !rem.is_zero() || !f.is_positive() {
            return Err(Error::Internal(format!(
                "A^n1 - delta1 = {shifted} is not a positive multiple of C^Z1"
            )));
        }
        Ok(OrderData {
            z1,
            n1,
            delta1,
            f: f.magnitude().clone(),
        })
    }
}

/// Order data for the least `Z` among `sols`.
pub fn order_data(form: &CanonicalForm, sols: &[CanonicalSolution]) -> Result<OrderData> {
    let Some(z1) = sols.iter().map(|s| s.z).min() else {
        return Err(Error::Precondition("order data needs at least one solution".into()));
    };
    if let Some(bad) = sols.iter().find(|s| !s.satisfies(form)) {
        return Err(Error::Precondition(format!("{bad:?} does not solve {form}")));
    }
    OrderData::compute(form, z1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn least_orders() {
        assert_eq!(least_pm_order(&big(2), &big(5)).unwrap(), (2, -1));
        assert_eq!(least_pm_order(&big(3), &big(8)).unwrap(), (2, 1));
        assert_eq!(least_pm_order(&big(1), &big(7)).unwrap(), (1, 1));
        assert_eq!(least_pm_order(&big(7), &big(10)).unwrap(), (2, -1));
        assert!(least_pm_order(&big(4), &big(6)).is_err());
        assert!(least_pm_order(&big(4), &big(1)).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let c = check_order_divisibility(&big(2), &big(5), 6).unwrap();
        assert_eq!(c.residue_sign, Some(-1));
        assert_eq!(c.divides, Some(true));
        assert!(c.holds());
        let c = check_order_divisibility(&big(2), &big(5), 3).unwrap();
        assert_eq!(c.residue_sign, None);
        assert!(c.iff_holds);
        let c = check_order_divisibility(&big(1), &big(7), 9).unwrap();
        assert!(c.holds());
        assert_eq!(c.divides, None);
    }

    #[test]
    fn synthetic_order_data() {
        let form = super::super::canonicalize(&crate::Instance::from_u64(7, 3, 10).unwrap());
        let od = OrderData::compute(&form, 1).unwrap();
        // 10 is the largest base, so A = 7
        assert_eq!((od.n1, od.delta1, od.f.clone()), (2, -1, big(5)));
    }
}
