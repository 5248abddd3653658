//! Outward-rounded interval arithmetic on arbitrary-precision binary floats.
//!
//! Every [`Interval`] produced by an [`IntervalCtx`] encloses the exact real
//! value of the expression that built it: lower endpoints are rounded toward
//! negative infinity and upper endpoints toward positive infinity. Callers
//! pick the endpoint matching the direction of the bound they need.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

/// Working precision in bits used when a caller does not choose one.
pub const DEFAULT_PRECISION: usize = 128;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

/// Precision plus the constant cache needed by `ln`/`exp`.
pub struct IntervalCtx {
    prec: usize,
    consts: RefCell<Consts>,
}

impl IntervalCtx {
    /// Panics if the constant cache cannot be allocated.
    pub fn new(prec: usize) -> Self {
        IntervalCtx {
            // integers up to a machine word must convert exactly
            prec: prec.max(64),
            consts: RefCell::new(Consts::new().expect("allocate float constant cache")),
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn int(&self, v: u64) -> Interval {
        let x = BigFloat::from_u64(v, self.prec);
        Interval::point(x)
    }

    pub fn big_int(&self, v: &BigUint) -> Interval {
        if let Some(w) = v.to_u64() {
            return self.int(w);
        }
        let hex = v.to_str_radix(16);
        let mut cc = self.consts.borrow_mut();
        let lo = BigFloat::parse(&hex, Radix::Hex, self.prec, DOWN, &mut cc);
        let hi = BigFloat::parse(&hex, Radix::Hex, self.prec, UP, &mut cc);
        Interval { lo, hi }
    }

    pub fn signed_int(&self, v: &BigInt) -> Interval {
        let mag = self.big_int(v.magnitude());
        if v.sign() == num_bigint::Sign::Minus {
            mag.neg()
        } else {
            mag
        }
    }

    /// Enclosure of `num / den`.
    pub fn ratio(&self, num: u128, den: u128) -> Interval {
        assert!(den > 0, "zero denominator");
        let n = BigFloat::from_u128(num, self.prec.max(128));
        let d = BigFloat::from_u128(den, self.prec.max(128));
        Interval {
            lo: n.div(&d, self.prec, DOWN),
            hi: n.div(&d, self.prec, UP),
        }
    }

    pub fn add(&self, x: &Interval, y: &Interval) -> Interval {
        Interval {
            lo: x.lo.add(&y.lo, self.prec, DOWN),
            hi: x.hi.add(&y.hi, self.prec, UP),
        }
    }

    pub fn sub(&self, x: &Interval, y: &Interval) -> Interval {
        Interval {
            lo: x.lo.sub(&y.hi, self.prec, DOWN),
            hi: x.hi.sub(&y.lo, self.prec, UP),
        }
    }

    pub fn mul(&self, x: &Interval, y: &Interval) -> Interval {
        let pairs = [(&x.lo, &y.lo), (&x.lo, &y.hi), (&x.hi, &y.lo), (&x.hi, &y.hi)];
        let lo = pairs
            .iter()
            .map(|(u, v)| u.mul(v, self.prec, DOWN))
            .reduce(|m, v| min_f(m, v))
            .expect("four products");
        let hi = pairs
            .iter()
            .map(|(u, v)| u.mul(v, self.prec, UP))
            .reduce(|m, v| max_f(m, v))
            .expect("four products");
        Interval { lo, hi }
    }

    /// Division by an interval that does not contain zero.
    pub fn div(&self, x: &Interval, y: &Interval) -> Interval {
        assert!(
            y.is_positive() || y.is_negative(),
            "division by an interval containing zero"
        );
        let pairs = [(&x.lo, &y.lo), (&x.lo, &y.hi), (&x.hi, &y.lo), (&x.hi, &y.hi)];
        let lo = pairs
            .iter()
            .map(|(u, v)| u.div(v, self.prec, DOWN))
            .reduce(|m, v| min_f(m, v))
            .expect("four quotients");
        let hi = pairs
            .iter()
            .map(|(u, v)| u.div(v, self.prec, UP))
            .reduce(|m, v| max_f(m, v))
            .expect("four quotients");
        Interval { lo, hi }
    }

    pub fn square(&self, x: &Interval) -> Interval {
        if x.lo.is_positive() || x.lo.is_zero() {
            Interval {
                lo: x.lo.mul(&x.lo, self.prec, DOWN),
                hi: x.hi.mul(&x.hi, self.prec, UP),
            }
        } else if x.hi.is_negative() || x.hi.is_zero() {
            Interval {
                lo: x.hi.mul(&x.hi, self.prec, DOWN),
                hi: x.lo.mul(&x.lo, self.prec, UP),
            }
        } else {
            let a = x.lo.mul(&x.lo, self.prec, UP);
            let b = x.hi.mul(&x.hi, self.prec, UP);
            Interval {
                lo: BigFloat::from_u64(0, self.prec),
                hi: max_f(a, b),
            }
        }
    }

    pub fn powi(&self, x: &Interval, n: u32) -> Interval {
        if n == 0 {
            return self.int(1);
        }
        if n % 2 == 0 {
            let h = self.powi(x, n / 2);
            return self.square(&h);
        }
        let h = self.powi(x, n - 1);
        self.mul(&h, x)
    }

    /// Natural logarithm; the argument must be strictly positive.
    pub fn ln(&self, x: &Interval) -> Interval {
        assert!(x.is_positive(), "ln of an interval reaching zero: {x}");
        let mut cc = self.consts.borrow_mut();
        Interval {
            lo: x.lo.ln(self.prec, DOWN, &mut cc),
            hi: x.hi.ln(self.prec, UP, &mut cc),
        }
    }

    pub fn ln_int(&self, v: u64) -> Interval {
        let x = self.int(v);
        self.ln(&x)
    }

    pub fn ln_big(&self, v: &BigUint) -> Interval {
        let x = self.big_int(v);
        self.ln(&x)
    }

    pub fn exp(&self, x: &Interval) -> Interval {
        let mut cc = self.consts.borrow_mut();
        Interval {
            lo: x.lo.exp(self.prec, DOWN, &mut cc),
            hi: x.hi.exp(self.prec, UP, &mut cc),
        }
    }

    /// Pointwise maximum `max{x, y}` over the two enclosures.
    pub fn max(&self, x: &Interval, y: &Interval) -> Interval {
        Interval {
            lo: max_f(x.lo.clone(), y.lo.clone()),
            hi: max_f(x.hi.clone(), y.hi.clone()),
        }
    }
}

impl Interval {
    fn point(x: BigFloat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    /// Every point is `> 0`.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    /// Every point is `< 0`.
    pub fn is_negative(&self) -> bool {
        self.hi.is_negative() && !self.hi.is_zero()
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        lt(&self.hi, &other.lo)
    }

    /// Every point of `self` is `>=` every point of `other`.
    pub fn certainly_ge(&self, other: &Interval) -> bool {
        !lt(&self.lo, &other.hi)
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Width `hi - lo` in double precision (rounded up).
    pub fn width_f64(&self) -> f64 {
        to_f64(&self.hi.sub(&self.lo, 64, UP))
    }

    /// `floor(hi)` as an integer; `None` when `hi < 0`.
    pub fn floor_hi(&self) -> Option<BigUint> {
        floor_to_biguint(&self.hi)
    }

    /// `floor(lo)` as an integer; `None` when `lo < 0`.
    pub fn floor_lo(&self) -> Option<BigUint> {
        floor_to_biguint(&self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6}, {:.6}]", self.lo_f64(), self.hi_f64())
    }
}

fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

fn min_f(a: BigFloat, b: BigFloat) -> BigFloat {
    if lt(&b, &a) {
        b
    } else {
        a
    }
}

fn max_f(a: BigFloat, b: BigFloat) -> BigFloat {
    if lt(&a, &b) {
        b
    } else {
        a
    }
}

/// Mantissa words are little-endian with the top bit set; the value is
/// `M * 2^(e - 64 * len)`.
fn raw_value(x: &BigFloat) -> Option<(BigUint, i64, bool)> {
    let (m, _, sign, e, _) = x.as_raw_parts()?;
    let words: Vec<u32> = m
        .iter()
        .flat_map(|w: &Word| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
        .collect();
    let mant = BigUint::new(words);
    let shift = e as i64 - (m.len() as i64) * 64;
    Some((mant, shift, sign == Sign::Neg))
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((mant, shift, neg)) = raw_value(x) else {
        return f64::NAN;
    };
    if mant.is_zero() {
        return 0.0;
    }
    // keep 64 leading bits; the truncation error is far below f64 resolution
    let bits = mant.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (&mant >> drop as u64).to_u64().unwrap_or(u64::MAX) as f64;
    let v = top * 2f64.powi((shift + drop) as i32);
    if neg {
        -v
    } else {
        v
    }
}

fn floor_to_biguint(x: &BigFloat) -> Option<BigUint> {
    if x.is_zero() {
        return Some(BigUint::zero());
    }
    let (mant, shift, neg) = raw_value(x)?;
    if neg {
        return None;
    }
    if shift >= 0 {
        Some(mant << shift as u64)
    } else {
        Some(mant >> (-shift) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_rounding_brackets_one_third() {
        let ctx = IntervalCtx::new(128);
        let third = ctx.ratio(1, 3);
        assert!(lt(third.lo(), third.hi()));
        assert!((third.mid_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert!(third.width_f64() < 1e-37);
    }

    #[test]
    fn exact_integers_stay_points() {
        let ctx = IntervalCtx::new(128);
        let v = ctx.int(27097);
        assert_eq!(v.floor_lo(), Some(BigUint::from(27097u32)));
        assert_eq!(v.floor_hi(), Some(BigUint::from(27097u32)));
        let big = BigUint::from(3u32).pow(80);
        let x = ctx.big_int(&big);
        assert_eq!(x.floor_lo(), Some(big.clone()));
        assert_eq!(x.floor_hi(), Some(big));
    }

    #[test]
    fn big_integer_conversion_rounds_outward() {
        let ctx = IntervalCtx::new(64);
        let big = BigUint::from(3u32).pow(200);
        let x = ctx.big_int(&big);
        assert!(x.floor_lo().unwrap() <= big);
        assert!(x.floor_hi().unwrap() >= big);
    }

    #[test]
    fn ln_encloses_double_result() {
        let ctx = IntervalCtx::new(128);
        let l5 = ctx.ln_int(5);
        assert!(l5.lo_f64() <= 5f64.ln() + 1e-15 && l5.hi_f64() >= 5f64.ln() - 1e-15);
        assert!(l5.width_f64() < 1e-36);
        let e = ctx.exp(&ctx.int(1));
        assert!((e.mid_f64() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn floor_of_fractional_value() {
        let ctx = IntervalCtx::new(128);
        let v = ctx.ratio(27097925, 1000);
        assert_eq!(v.floor_hi(), Some(BigUint::from(27097u32)));
        assert_eq!(ctx.ratio(1, 2).floor_hi(), Some(BigUint::zero()));
        assert_eq!(ctx.ratio(1, 2).neg().floor_hi(), None);
    }

    #[test]
    fn products_with_mixed_signs() {
        let ctx = IntervalCtx::new(128);
        let a = ctx.sub(&ctx.int(1), &ctx.int(3)); // [-2, -2]
        let b = ctx.ratio(3, 2);
        let p = ctx.mul(&a, &b);
        assert_eq!(p.lo_f64(), -3.0);
        assert_eq!(p.hi_f64(), -3.0);
        let sq = ctx.square(&ctx.sub(&ctx.ratio(1, 2), &ctx.int(1)));
        assert!((sq.mid_f64() - 0.25).abs() < 1e-30);
        let q = ctx.div(&ctx.int(7), &a);
        assert_eq!(q.mid_f64(), -3.5);
    }
}
