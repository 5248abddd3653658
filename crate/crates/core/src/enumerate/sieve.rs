//! Residue filters for candidate pairs `(x, z)`.
//!
//! A filter modulo `m` stores `a^x mod m` and `c^z mod m` for every exponent
//! up to the cap, plus the set `{b^y mod m : 1 <= y <= cap}`. A candidate
//! survives when `c^z - a^x mod m` lies in that set, which every solution
//! does. Filters are tried in order of increasing pass fraction.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{biguint_mod_small, mul_mod, primes_up_to};

/// Largest modulus a filter may use; residues must fit in `u16`.
const MAX_MODULUS: u64 = 1 << 16;

pub(crate) struct Filters {
    moduli: Vec<u32>,
    /// `a_res[x * k + i]` is `a^x mod moduli[i]`.
    a_res: Vec<u16>,
    c_res: Vec<u16>,
    /// Concatenated bitsets, one per filter, starting at `offsets[i]` words.
    accept: Vec<u64>,
    offsets: Vec<usize>,
}

impl Filters {
    /// Filter set for iterating `a^x` against `c^z` and solving for `b^y`.
    ///
    /// `primes` holds the small primes; `base_powers` adds the largest powers
    /// of `a`, `b` and `c` below 2^16.
    pub(crate) fn build(
        a: &BigUint,
        b: &BigUint,
        c: &BigUint,
        cap: u64,
        primes: &[u64],
        base_powers: bool,
    ) -> Filters {
        let mut moduli: Vec<u64> = primes.to_vec();
        if base_powers {
            for base in [a, b, c] {
                if let Some(m) = largest_power_below(base, MAX_MODULUS) {
                    if !moduli.contains(&m) {
                        moduli.push(m);
                    }
                }
            }
        }

        let mut built: Vec<(u64, Vec<u64>, f64)> = moduli
            .into_iter()
            .map(|m| {
                let bits = accept_set(biguint_mod_small(b, m), m, cap);
                let hits: u32 = bits.iter().map(|w| w.count_ones()).sum();
                (m, bits, f64::from(hits) / m as f64)
            })
            // a filter accepting every residue only costs time
            .filter(|(_, _, frac)| *frac < 1.0)
            .collect();
        built.sort_by(|l, r| l.2.total_cmp(&r.2).then(l.0.cmp(&r.0)));

        let k = built.len();
        let len = cap as usize + 1;
        let mut a_res = vec![0u16; len * k];
        let mut c_res = vec![0u16; len * k];
        let mut accept = Vec::new();
        let mut offsets = Vec::with_capacity(k);
        for (i, (m, bits, _)) in built.iter().enumerate() {
            fill_powers(&mut a_res, i, k, biguint_mod_small(a, *m), *m);
            fill_powers(&mut c_res, i, k, biguint_mod_small(c, *m), *m);
            offsets.push(accept.len());
            accept.extend_from_slice(bits);
        }
        Filters {
            moduli: built.iter().map(|(m, _, _)| *m as u32).collect(),
            a_res,
            c_res,
            accept,
            offsets,
        }
    }

    pub(crate) fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    /// Whether `(x, z)` passes every filter.
    #[inline]
    pub(crate) fn passes(&self, x: u64, z: u64) -> bool {
        let k = self.moduli.len();
        let ar = &self.a_res[x as usize * k..x as usize * k + k];
        let cr = &self.c_res[z as usize * k..z as usize * k + k];
        for i in 0..k {
            let m = self.moduli[i];
            let (cv, av) = (u32::from(cr[i]), u32::from(ar[i]));
            let r = if cv >= av { cv - av } else { cv + m - av } as usize;
            let word = self.accept[self.offsets[i] + (r >> 6)];
            if (word >> (r & 63)) & 1 == 0 {
                return false;
            }
        }
        true
    }
}

/// Smallest primes up to `prime_cap` that divide none of `a, b, c`.
pub(crate) fn filter_primes(a: &BigUint, b: &BigUint, c: &BigUint, prime_cap: u64, count: usize) -> Vec<u64> {
    primes_up_to(prime_cap.min(MAX_MODULUS - 1))
        .into_iter()
        .filter(|&p| [a, b, c].iter().all(|v| biguint_mod_small(v, p) != 0))
        .take(count)
        .collect()
}

fn largest_power_below(base: &BigUint, limit: u64) -> Option<u64> {
    let b = base.to_u64().filter(|&b| b < limit)?;
    let mut m = b;
    while m * b < limit {
        m *= b;
    }
    Some(m)
}

/// Bitset of `{r^y mod m : 1 <= y <= cap}`.
fn accept_set(r: u64, m: u64, cap: u64) -> Vec<u64> {
    let mut bits = vec![0u64; (m as usize).div_ceil(64)];
    let mut v = r % m;
    for _ in 0..cap {
        let (w, s) = ((v >> 6) as usize, v & 63);
        if bits[w] >> s & 1 == 1 {
            // the sequence has entered its cycle
            break;
        }
        bits[w] |= 1 << s;
        v = mul_mod(v, r, m);
    }
    bits
}

fn fill_powers(table: &mut [u16], i: usize, k: usize, r: u64, m: u64) {
    let len = table.len() / k.max(1);
    let mut v = 1 % m;
    for e in 0..len {
        table[e * k + i] = v as u16;
        v = mul_mod(v, r, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn accept_set_of_powers_of_two_mod_seven() {
        let bits = accept_set(2, 7, 100);
        assert_eq!(bits[0], 0b0001_0110);
        // y <= 1 keeps only 2 itself
        assert_eq!(accept_set(2, 7, 1)[0], 0b100);
    }

    #[test]
    fn base_power_modulus_accepts_zero_and_small_powers() {
        let bits = accept_set(0, 81, 100);
        assert_eq!(bits[0], 1);
        let bits = accept_set(9 % 81, 81, 100);
        assert_eq!(bits[0] & 0b11_1111_1111, 1 | 1 << 9);
    }

    #[test]
    fn primes_skip_divisors_of_the_bases() {
        let ps = filter_primes(&big(3), &big(5), &big(2), 64, 12);
        assert_eq!(ps[..4], [7, 11, 13, 17]);
        assert_eq!(ps.len(), 12);
        assert!(filter_primes(&big(3), &big(5), &big(2), 10, 12) == vec![7]);
    }

    #[test]
    fn solutions_pass_every_filter() {
        let (a, b, c) = (big(5), big(3), big(2));
        let primes = filter_primes(&a, &b, &c, 64, 12);
        let f = Filters::build(&a, &b, &c, 40, &primes, true);
        assert!(!f.moduli().is_empty());
        // 3 + 5 = 2^3, 27 + 5 = 2^5, 3 + 125 = 2^7
        for (x, z) in [(1, 3), (1, 5), (3, 7)] {
            assert!(f.passes(x, z));
        }
        let rejected = (1..=40u64)
            .flat_map(|z| (1..=40u64).map(move |x| (x, z)))
            .filter(|&(x, z)| !f.passes(x, z))
            .count();
        assert!(rejected > 1500);
    }
}
