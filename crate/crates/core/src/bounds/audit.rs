//! Per-solution consistency checks against the explicit bounds.
//!
//! Each check states a property that every solution of the equation must
//! satisfy, restricted to the case hypotheses under which the bound was
//! derived. Exact integer comparisons are used wherever the property can be
//! phrased without logarithms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::Serialize;

use super::{
    conditional_quadratic_enclosure, linear_form_log_lower_bound, two_adic_order_upper_bound,
    LinearFormQuery, PadicQuery,
};
use crate::arith::ord2;
use crate::interval::{Interval, IntervalCtx};
use crate::model::{pow, Instance, Solution};

#[derive(Clone, Debug, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Checks that applied to one solution. Checks whose case hypothesis does not
/// hold for the solution are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionAudit {
    pub solution: Solution,
    pub checks: Vec<AuditCheck>,
}

impl SolutionAudit {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

struct Powers {
    ax: BigUint,
    by: BigUint,
    cz: BigUint,
}

/// Runs every applicable check on `sol`, which must be a solution of `inst`.
pub fn audit_solution(inst: &Instance, sol: &Solution, prec: usize) -> SolutionAudit {
    let ctx = IntervalCtx::new(prec);
    let p = Powers {
        ax: pow(inst.a(), sol.x),
        by: pow(inst.b(), sol.y),
        cz: pow(inst.c(), sol.z),
    };
    let mut checks = Vec::new();

    checks.push(AuditCheck {
        name: "equation",
        holds: &p.ax + &p.by == p.cz,
        detail: format!("{}^{} + {}^{} = {}^{}", inst.a(), sol.x, inst.b(), sol.y, inst.c(), sol.z),
    });
    checks.push(AuditCheck {
        name: "log_gap",
        holds: p.ax < p.cz && p.by < p.cz,
        detail: "max{x ln a, y ln b} < z ln c".into(),
    });

    let a_small = &p.ax * &p.ax < p.cz;
    let b_small = &p.by * &p.by < p.cz;
    if a_small || b_small {
        small_term_checks(inst, sol, &p, a_small, &ctx, &mut checks);
    }
    if sol.min_exponent() > 1 {
        // the per-branch caps were derived for the large-term case only
        parity_checks(inst, sol, !(a_small || b_small), &ctx, &mut checks);
    }

    SolutionAudit {
        solution: *sol,
        checks,
    }
}

fn below(ctx: &IntervalCtx, n: u64, bound: &Interval) -> bool {
    ctx.int(n).certainly_lt(bound)
}

fn small_term_checks(
    inst: &Instance,
    sol: &Solution,
    p: &Powers,
    a_small: bool,
    ctx: &IntervalCtx,
    checks: &mut Vec<AuditCheck>,
) {
    let quad = conditional_quadratic_enclosure(inst, ctx);
    checks.push(AuditCheck {
        name: "small_term_cap",
        holds: below(ctx, sol.max_exponent(), &quad),
        detail: format!("max{{x,y,z}} = {} < 4663 (ln max)^2 ∈ {quad}", sol.max_exponent()),
    });

    // Orient so that `small^e1` is the minor term and `big^e2` the major one.
    let (small_pow, big_pow, big_base, big_exp) = if a_small {
        (&p.ax, &p.by, inst.b(), sol.y)
    } else {
        (&p.by, &p.ax, inst.a(), sol.x)
    };
    // Λ = z ln c − e2 ln big = ln(1 + r) with r = small_pow / big_pow < 1, so
    // r − r²/2 <= Λ <= r encloses it without cancellation.
    let num = ctx.big_int(small_pow);
    let den = ctx.big_int(big_pow);
    let r = ctx.div(&num, &den);
    let half_r = ctx.div(&r, &ctx.int(2));
    let lam_lo = ctx.mul(&r, &ctx.sub(&ctx.int(1), &half_r));
    let log_lam_lo = ctx.ln(&lam_lo);
    let log_lam_hi = ctx.ln(&r);

    let q = LinearFormQuery::new(inst.c().clone(), big_base.clone(), sol.z, big_exp)
        .expect("bases exceed 1 and exponents are positive");
    let lb = linear_form_log_lower_bound(&q, ctx.precision());
    checks.push(AuditCheck {
        name: "linear_form_lower_bound",
        holds: !lt_lo(&log_lam_lo, &lb),
        detail: format!("log Λ >= {:.6} vs bound {:.6}", log_lam_lo.lo_f64(), lb.lo_f64()),
    });

    // log Λ < ln 2 − (z/2) ln c
    let ln_c = ctx.ln_big(inst.c());
    let half_z = ctx.div(&ctx.int(sol.z), &ctx.int(2));
    let ceiling = ctx.sub(&ctx.ln_int(2), &ctx.mul(&half_z, &ln_c));
    checks.push(AuditCheck {
        name: "linear_form_upper",
        holds: log_lam_hi.certainly_lt(&ceiling),
        detail: format!("log Λ <= {:.6} < ln 2 − (z/2) ln c = {:.6}", log_lam_hi.hi_f64(), ceiling.lo_f64()),
    });
}

/// `lo(x) < lo(y)`: the computed lower end falls below the bound.
fn lt_lo(x: &Interval, y: &Interval) -> bool {
    matches!(x.lo().cmp(y.lo()), Some(c) if c < 0)
}

/// `(−1)^((n−1)/2) n`, the sign making an odd `n` congruent to 1 mod 4.
fn unit_normalised(n: &BigUint) -> BigInt {
    let v = BigInt::from(n.clone());
    if n.mod_floor(&BigUint::from(4u32)) == BigUint::from(3u32) {
        -v
    } else {
        v
    }
}

fn parity_checks(
    inst: &Instance,
    sol: &Solution,
    with_caps: bool,
    ctx: &IntervalCtx,
    checks: &mut Vec<AuditCheck>,
) {
    let two = BigUint::from(2u32);
    let even = |n: &BigUint| n.is_multiple_of(&two);
    let ln_a = ctx.ln_big(inst.a());
    let ln_b = ctx.ln_big(inst.b());
    let ln_c = ctx.ln_big(inst.c());
    let k6500 = ctx.int(6500);

    let cap = |name: &'static str, v: u64, label: &str, bound: Interval, checks: &mut Vec<AuditCheck>| {
        if !with_caps {
            return;
        }
        checks.push(AuditCheck {
            name,
            holds: below(ctx, v, &bound),
            detail: format!("{label} = {v} < {bound}"),
        });
    };

    // (odd base pair, exponents, exponent bounded below by the valuation)
    let padic_setup = if even(inst.a()) {
        // z < 6500 ln²a ln b, x < 6500 ln a ln b ln c, y < 6500 ln²a ln c
        let la2 = ctx.square(&ln_a);
        cap("even_a_z_cap", sol.z, "z", ctx.mul(&k6500, &ctx.mul(&la2, &ln_b)), checks);
        let abc = ctx.mul(&ctx.mul(&ln_a, &ln_b), &ln_c);
        cap("even_a_x_cap", sol.x, "x", ctx.mul(&k6500, &abc), checks);
        cap("even_a_y_cap", sol.y, "y", ctx.mul(&k6500, &ctx.mul(&la2, &ln_c)), checks);
        Some((inst.c(), inst.b(), sol.z, sol.y, sol.x, "x"))
    } else if even(inst.b()) {
        let lb2 = ctx.square(&ln_b);
        cap("even_b_z_cap", sol.z, "z", ctx.mul(&k6500, &ctx.mul(&lb2, &ln_a)), checks);
        let abc = ctx.mul(&ctx.mul(&ln_a, &ln_b), &ln_c);
        cap("even_b_y_cap", sol.y, "y", ctx.mul(&k6500, &abc), checks);
        cap("even_b_x_cap", sol.x, "x", ctx.mul(&k6500, &ctx.mul(&lb2, &ln_c)), checks);
        Some((inst.c(), inst.a(), sol.z, sol.x, sol.y, "y"))
    } else if even(inst.c()) {
        // z < 3000 ln a ln b ln c
        let abc = ctx.mul(&ctx.mul(&ln_a, &ln_b), &ln_c);
        cap("even_c_z_cap", sol.z, "z", ctx.mul(&ctx.int(3000), &abc), checks);
        Some((inst.a(), inst.b(), sol.x, sol.y, sol.z, "z"))
    } else {
        None
    };

    let Some((base1, base2, e1, e2, valued, valued_name)) = padic_setup else {
        return;
    };
    let (alpha1, alpha2) = (unit_normalised(base1), unit_normalised(base2));
    let q = PadicQuery::new(alpha1, alpha2, e1, e2).expect("odd bases above 2 normalised to 1 mod 4");
    let lambda = q.lambda();
    let Some(v) = ord2(&lambda) else {
        checks.push(AuditCheck {
            name: "two_adic_nonzero",
            holds: false,
            detail: "Λ' vanished".into(),
        });
        return;
    };
    let ub = two_adic_order_upper_bound(&q, ctx.precision());
    checks.push(AuditCheck {
        name: "two_adic_upper_bound",
        holds: !ub.certainly_lt(&ctx.int(v)),
        detail: format!("ord2 Λ' = {v} <= {:.4}", ub.hi_f64()),
    });
    checks.push(AuditCheck {
        name: "two_adic_lower_bound",
        holds: v >= valued,
        detail: format!("ord2 Λ' = {v} >= {valued_name} = {valued}"),
    });
}
