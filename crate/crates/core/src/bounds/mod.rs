//! Explicit solution caps and the auxiliary linear-form bounds.
//!
//! All real-valued formulas go through [`IntervalCtx`], so every cap is an
//! over-approximation and every lower bound an under-approximation of the
//! exact real expression.

mod audit;
mod threshold;

pub use audit::{audit_solution, AuditCheck, SolutionAudit};
pub use threshold::{
    proof_obligations, verify_threshold, ProofObligation, ScaledLog, ThresholdFamily, ThresholdReport,
    ThresholdSpec, TraceEntry,
};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalCtx, DEFAULT_PRECISION};
use crate::model::Instance;

/// Cap on `max{x, y, z}` over all solutions of one instance.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// Inclusive: no solution has an exponent above this.
    pub bound: u64,
    pub max_base: BigUint,
    /// Enclosure of `ln max{a, b, c}`.
    pub log_max: Interval,
    /// Enclosure of `6500 (ln max)^3`; `bound` is the floor of its upper end.
    pub formula_value: Interval,
}

/// `6500 (ln max{a,b,c})^3`, the unconditional exponent cap.
pub fn solution_bound(inst: &Instance) -> BoundReport {
    solution_bound_with(inst, DEFAULT_PRECISION)
}

pub fn solution_bound_with(inst: &Instance, prec: usize) -> BoundReport {
    let ctx = IntervalCtx::new(prec);
    let log_max = ctx.ln_big(inst.max_base());
    let formula_value = ctx.mul(&ctx.int(6500), &ctx.powi(&log_max, 3));
    let bound = floor_u64(&formula_value).max(1);
    BoundReport {
        bound,
        max_base: inst.max_base().clone(),
        log_max,
        formula_value,
    }
}

/// `4663 (ln max{a,b,c})^2`, the cap for solutions whose smaller power
/// satisfies `min{a^{2x}, b^{2y}} < c^z`. Not valid for other solutions.
pub fn conditional_quadratic_bound(inst: &Instance) -> u64 {
    conditional_quadratic_bound_with(inst, DEFAULT_PRECISION)
}

pub fn conditional_quadratic_bound_with(inst: &Instance, prec: usize) -> u64 {
    floor_u64(&conditional_quadratic_enclosure(inst, &mut IntervalCtx::new(prec)))
}

pub(crate) fn conditional_quadratic_enclosure(inst: &Instance, ctx: &IntervalCtx) -> Interval {
    let l = ctx.ln_big(inst.max_base());
    ctx.mul(&ctx.int(4663), &ctx.square(&l))
}

fn floor_u64(v: &Interval) -> u64 {
    v.floor_hi()
        .and_then(|n| n.to_u64())
        .expect("cap is a non-negative value below 2^64")
}

/// Data for `Λ = β1 log α1 − β2 log α2` with integer `α1, α2 >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormQuery {
    pub alpha1: BigUint,
    pub alpha2: BigUint,
    pub beta1: u64,
    pub beta2: u64,
}

impl LinearFormQuery {
    pub fn new(alpha1: BigUint, alpha2: BigUint, beta1: u64, beta2: u64) -> Result<Self> {
        let two = BigUint::from(2u32);
        if alpha1 < two || alpha2 < two {
            return Err(Error::InvalidArgument(format!(
                "linear form needs min{{alpha1, alpha2}} >= 2, got ({alpha1}, {alpha2})"
            )));
        }
        if beta1 == 0 || beta2 == 0 {
            return Err(Error::InvalidArgument("beta1 and beta2 must be positive".into()));
        }
        Ok(LinearFormQuery {
            alpha1,
            alpha2,
            beta1,
            beta2,
        })
    }
}

/// Lower bound for `log |Λ|` (Laurent–Mignotte–Nesterenko, two logarithms):
///
/// `-32.31 (log α1)(log α2) (max{10, 0.18 + log(β1/log α2 + β2/log α1)})^2`.
///
/// Returns an enclosure of the formula; its lower endpoint is a valid lower
/// bound for `log |Λ|` whenever `Λ != 0`.
pub fn linear_form_log_lower_bound(q: &LinearFormQuery, prec: usize) -> Interval {
    let ctx = IntervalCtx::new(prec);
    let l1 = ctx.ln_big(&q.alpha1);
    let l2 = ctx.ln_big(&q.alpha2);
    let ratio = ctx.add(&ctx.div(&ctx.int(q.beta1), &l2), &ctx.div(&ctx.int(q.beta2), &l1));
    let inner = ctx.add(&ctx.ratio(18, 100), &ctx.ln(&ratio));
    let clamp = ctx.max(&ctx.int(10), &inner);
    let scale = ctx.mul(&ctx.ratio(3231, 100), &ctx.mul(&l1, &l2));
    ctx.mul(&scale, &ctx.square(&clamp)).neg()
}

/// Data for `Λ' = α1^β1 − α2^β2` with odd `α1 ≡ α2 ≡ 1 (mod 4)`, `|α| >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicQuery {
    pub alpha1: BigInt,
    pub alpha2: BigInt,
    pub beta1: u64,
    pub beta2: u64,
}

impl PadicQuery {
    pub fn new(alpha1: BigInt, alpha2: BigInt, beta1: u64, beta2: u64) -> Result<Self> {
        let four = BigInt::from(4);
        for (name, a) in [("alpha1", &alpha1), ("alpha2", &alpha2)] {
            if a.abs() < BigInt::from(3) {
                return Err(Error::InvalidArgument(format!("|{name}| = |{a}| must be >= 3")));
            }
            if a.mod_floor(&four) != BigInt::from(1) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {a} must be odd and congruent to 1 mod 4"
                )));
            }
        }
        if beta1 == 0 || beta2 == 0 {
            return Err(Error::InvalidArgument("beta1 and beta2 must be positive".into()));
        }
        Ok(PadicQuery {
            alpha1,
            alpha2,
            beta1,
            beta2,
        })
    }

    /// `α1^β1 − α2^β2`, exactly.
    pub fn lambda(&self) -> BigInt {
        num_traits::Pow::pow(&self.alpha1, self.beta1) - num_traits::Pow::pow(&self.alpha2, self.beta2)
    }
}

/// Upper bound for the 2-adic valuation of `Λ'` (Bugeaud's 2-adic estimate
/// specialised to `p = 2`):
///
/// `19.57 (log|α1|)(log|α2|) (max{12 log 2, 0.4 + log(2 log 2) + log(β1/log|α2| + β2/log|α1|)})^2`.
///
/// The upper endpoint of the returned enclosure is the bound.
pub fn two_adic_order_upper_bound(q: &PadicQuery, prec: usize) -> Interval {
    let ctx = IntervalCtx::new(prec);
    let l1 = ctx.ln_big(q.alpha1.magnitude());
    let l2 = ctx.ln_big(q.alpha2.magnitude());
    let ln2 = ctx.ln_int(2);
    let ratio = ctx.add(&ctx.div(&ctx.int(q.beta1), &l2), &ctx.div(&ctx.int(q.beta2), &l1));
    let two_ln2 = ctx.mul(&ctx.int(2), &ln2);
    let shift = ctx.add(&ctx.ratio(4, 10), &ctx.ln(&two_ln2));
    let inner = ctx.add(&shift, &ctx.ln(&ratio));
    let clamp = ctx.max(&ctx.mul(&ctx.int(12), &ln2), &inner);
    let scale = ctx.mul(&ctx.ratio(1957, 100), &ctx.mul(&l1, &l2));
    ctx.mul(&scale, &ctx.square(&clamp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    // Reference values from a 60-digit mpmath evaluation.
    const CAP_LN5: f64 = 27097.925167856742;
    const QUAD_LN5: f64 = 12078.524107129836;
    const QUAD_LN500: f64 = 180091.37284855298;
    const LMN_2_5: f64 = -3604.430422017928;
    const PADIC_5_M3: f64 = 2393.9932409013776;

    fn inst(a: u64, b: u64, c: u64) -> Instance {
        Instance::from_u64(a, b, c).unwrap()
    }

    #[test]
    fn showcase_cap() {
        let r = solution_bound(&inst(3, 5, 2));
        assert_eq!(r.bound, 27097);
        assert!(r.formula_value.lo_f64() <= CAP_LN5 && CAP_LN5 <= r.formula_value.hi_f64());
        assert!(r.formula_value.width_f64() < 1e-25);
        assert_eq!(r.max_base, BigUint::from(5u32));
    }

    #[test]
    fn cap_depends_only_on_max_base() {
        for (a, b, c) in [(2, 3, 5), (3, 4, 5), (5, 2, 3)] {
            assert_eq!(solution_bound(&inst(a, b, c)).bound, 27097);
        }
    }

    #[test]
    fn quadratic_caps() {
        assert_eq!(conditional_quadratic_bound(&inst(3, 5, 2)), 12078);
        assert_eq!(conditional_quadratic_bound(&inst(2, 3, 5)), 12078);
        assert_eq!(conditional_quadratic_bound(&inst(3, 7, 500)), 180091);
        let ctx = IntervalCtx::new(128);
        let e = conditional_quadratic_enclosure(&inst(3, 5, 2), &ctx);
        assert!(e.lo_f64() <= QUAD_LN5 && QUAD_LN5 <= e.hi_f64());
        let e = conditional_quadratic_enclosure(&inst(3, 7, 500), &ctx);
        assert!(e.lo_f64() <= QUAD_LN500 && QUAD_LN500 <= e.hi_f64());
    }

    #[test]
    fn cap_is_monotone_in_max_base() {
        let mut prev = 0;
        for m in 5..400u64 {
            let b = solution_bound(&inst(2, 3, 6 * m + 1)).bound;
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn linear_form_clamped_case() {
        let q = LinearFormQuery::new(2u32.into(), 5u32.into(), 3, 1).unwrap();
        let v = linear_form_log_lower_bound(&q, 128);
        assert!(v.lo_f64() <= LMN_2_5 && LMN_2_5 <= v.hi_f64());
        assert!(v.width_f64() < 1e-25);
    }

    #[test]
    fn linear_form_rejects_small_alpha() {
        assert!(LinearFormQuery::new(1u32.into(), 5u32.into(), 1, 1).is_err());
    }

    #[test]
    fn linear_form_unclamped_branch_grows() {
        // 0.18 + log(β1/log α2 + β2/log α1) > 10 once the β's are ~ e^10.
        let small = LinearFormQuery::new(3u32.into(), 7u32.into(), 10, 10).unwrap();
        let big = LinearFormQuery::new(3u32.into(), 7u32.into(), 10_000_000, 10_000_000).unwrap();
        let vs = linear_form_log_lower_bound(&small, 128);
        let vb = linear_form_log_lower_bound(&big, 128);
        let expect_small = -3231.0 * 3f64.ln() * 7f64.ln();
        assert!((vs.mid_f64() - expect_small).abs() < 1e-9);
        let inner = 0.18 + (1e7 / 7f64.ln() + 1e7 / 3f64.ln()).ln();
        let expect_big = -32.31 * 3f64.ln() * 7f64.ln() * inner * inner;
        assert!(inner > 10.0);
        assert!((vb.mid_f64() - expect_big).abs() < 1e-8);
    }

    #[test]
    fn padic_clamped_case_and_direct_valuations() {
        let q = PadicQuery::new(BigInt::from(5), BigInt::from(-3), 1, 1).unwrap();
        let v = two_adic_order_upper_bound(&q, 128);
        assert!(v.lo_f64() <= PADIC_5_M3 && PADIC_5_M3 <= v.hi_f64());
        assert_eq!(crate::arith::ord2(&q.lambda()), Some(3));
        assert!(3.0 <= v.hi_f64());

        let q2 = PadicQuery::new(BigInt::from(5), BigInt::from(-3), 2, 2).unwrap();
        assert_eq!(crate::arith::ord2(&q2.lambda()), Some(4));
        assert!(4.0 <= two_adic_order_upper_bound(&q2, 128).hi_f64());
    }

    #[test]
    fn padic_rejects_bad_alphas() {
        for (a1, a2) in [(3, 5), (4, 5), (1, 5), (5, 7), (-1, 5)] {
            assert!(PadicQuery::new(BigInt::from(a1), BigInt::from(a2), 1, 1).is_err(), "{a1} {a2}");
        }
        assert!(PadicQuery::new(BigInt::from(-7), BigInt::from(13), 1, 1).is_ok());
    }

    #[test]
    fn dominance_over_quadratic_cap() {
        for c in [5u64, 7, 11, 101, 1001, 65537] {
            let i = inst(2, 3, c);
            assert!(solution_bound(&i).bound >= conditional_quadratic_bound(&i));
        }
    }

    #[test]
    fn doubling_precision_narrows_but_keeps_the_cap() {
        let i = inst(3, 5, 2);
        let lo = solution_bound_with(&i, 128);
        let hi = solution_bound_with(&i, 256);
        assert_eq!(lo.bound, hi.bound);
        assert!(hi.formula_value.width_f64() <= lo.formula_value.width_f64());
    }
}
