//! Elementary integer helpers: gcd and modular inverses, 2-adic valuation,
//! small-prime generation and word-sized modular orders.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Natural logarithm of a big integer in double precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map_or(f64::NAN, |v| (v as f64).ln());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exponent of 2 in `n`; `None` for zero.
pub fn ord2(n: &BigInt) -> Option<u64> {
    n.magnitude().trailing_zeros()
}

/// Inverse of `r` modulo `m` (`m > 1`), reduced into `[0, m)`.
///
/// Returns `None` when `gcd(r, m) != 1`. The inverse is automatically coprime
/// to `m`.
pub fn mod_inverse(r: &BigInt, m: &BigUint) -> Option<BigUint> {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    let e = r.mod_floor(&m).extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

/// `r mod m` as a non-negative residue.
pub fn residue(r: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    r.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

/// `(-1)^e` times `sign`, as a `BigInt` in `{-1, 1}`.
pub fn signed_unit(sign: i8, e: u64) -> BigInt {
    let s = if e % 2 == 0 { 1 } else { -1 } * i64::from(sign);
    BigInt::from(s)
}

/// `s^e` for a sign `s` in `{-1, 1}`.
pub fn sign_pow(s: i8, e: u64) -> BigInt {
    debug_assert!(s == 1 || s == -1);
    if s < 0 && e % 2 == 1 {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// Primes `p <= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Multiplicative order of `r` modulo `p` for `gcd(r, p) = 1`, by scanning.
pub fn order_mod_small(r: u64, p: u64) -> u64 {
    debug_assert!(p > 1 && r.gcd(&p) == 1);
    let r = r % p;
    let mut acc = r;
    let mut k = 1;
    while acc != 1 % p {
        acc = mul_mod(acc, r, p);
        k += 1;
    }
    k
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `n mod p` for a big integer and a word-sized modulus.
pub fn biguint_mod_small(n: &BigUint, p: u64) -> u64 {
    (n % p).to_u64().expect("residue below a u64 modulus")
}

pub fn is_nonzero_positive(n: &BigInt) -> bool {
    n.is_positive() && !n.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_big_values() {
        let n = BigUint::from(10u32).pow(40);
        let got = ln_biguint(&n);
        assert!((got - 40.0 * 10f64.ln()).abs() < 1e-12);
        assert!((ln_biguint(&BigUint::from(5u32)) - 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn two_adic_valuation() {
        assert_eq!(ord2(&BigInt::from(8)), Some(3));
        assert_eq!(ord2(&BigInt::from(-48)), Some(4));
        assert_eq!(ord2(&BigInt::from(7)), Some(0));
        assert_eq!(ord2(&BigInt::zero()), None);
    }

    #[test]
    fn inverses() {
        let m = BigUint::from(25u32);
        assert_eq!(mod_inverse(&BigInt::from(2), &m), Some(BigUint::from(13u32)));
        assert_eq!(mod_inverse(&BigInt::from(-2), &m), Some(BigUint::from(12u32)));
        assert_eq!(mod_inverse(&BigInt::from(5), &m), None);
        for r in 1..200i64 {
            let m = BigUint::from(199u32 * 3);
            if let Some(inv) = mod_inverse(&BigInt::from(r), &m) {
                assert_eq!((BigUint::from(r as u64) * &inv) % &m, BigUint::one());
                assert!(inv.gcd(&m).is_one());
            } else {
                assert!(!BigUint::from(r as u64).gcd(&m).is_one());
            }
        }
    }

    #[test]
    fn small_primes_and_orders() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(order_mod_small(5, 11), 5);
        assert_eq!(order_mod_small(5, 31), 3);
        assert_eq!(order_mod_small(2, 7), 3);
        assert_eq!(order_mod_small(1, 13), 1);
    }

    #[test]
    fn residues_are_non_negative() {
        assert_eq!(residue(&BigInt::from(-3), &BigUint::from(4u32)), BigUint::one());
        assert_eq!(signed_unit(-1, 3), BigInt::one());
        assert_eq!(signed_unit(1, 3), -BigInt::one());
        assert_eq!(sign_pow(-1, 3), -BigInt::one());
        assert_eq!(sign_pow(-1, 4), BigInt::one());
        assert_eq!(sign_pow(1, 3), BigInt::one());
    }
}
