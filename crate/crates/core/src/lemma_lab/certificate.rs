//! Clause-by-clause certificates for the congruence and gcd chain.
//!
//! A certificate lists its inputs, every intermediate quantity as a decimal
//! string, and one entry per checked relation. A relation that fails is
//! reported in the verdict; only malformed input is an error.

use indexmap::IndexMap;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::order::{least_pm_order, order_data, OrderData};
use super::{canonicalize, to_canonical_solution, CanonicalForm, CanonicalSolution};
use crate::arith::{mod_inverse, residue, sign_pow};
use crate::enumerate::{enumerate_solutions, SieveConfig};
use crate::error::{Error, Result};
use crate::model::{pow, Instance};

/// Largest power `A^d`, in bits, that is expanded exactly. Beyond it the
/// relations are checked with modular arithmetic only.
const EXACT_BITS: u64 = 1 << 22;

/// Largest `n2` for which the binomial sum is expanded term by term.
const MAX_BINOMIAL_TERMS: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `A^|XY' - X'Y| = (-λ)^(Y+Y') (mod C^Z)` for two solutions.
    PairCongruence,
    /// At most two solutions share the least `Z`.
    MinimalLevelCount,
    /// `gcd(C, f) <= Y2` from two solutions with `Z1 < Z2`.
    GcdChain,
    /// The relations forced by three solutions with `Z1 < Z2 <= Z3`.
    TripleChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCertificate {
    pub kind: CertificateKind,
    pub inputs: IndexMap<String, String>,
    pub recomputed: IndexMap<String, String>,
    pub clauses: Vec<Clause>,
    pub verdict: Verdict,
}

impl LemmaCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn value(&self, name: &str) -> Option<&str> {
        self.recomputed.get(name).map(String::as_str)
    }

    pub fn failed_clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

struct Builder {
    kind: CertificateKind,
    inputs: IndexMap<String, String>,
    recomputed: IndexMap<String, String>,
    clauses: Vec<Clause>,
}

impl Builder {
    fn new(kind: CertificateKind, form: &CanonicalForm) -> Self {
        let mut b = Builder {
            kind,
            inputs: IndexMap::new(),
            recomputed: IndexMap::new(),
            clauses: Vec::new(),
        };
        b.input("form", form.to_string());
        b.input("lambda", form.lambda());
        b
    }

    fn input(&mut self, k: &str, v: impl ToString) {
        self.inputs.insert(k.into(), v.to_string());
    }

    fn value(&mut self, k: &str, v: impl ToString) {
        self.recomputed.insert(k.into(), v.to_string());
    }

    fn clause(&mut self, name: &'static str, holds: bool, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name,
            holds,
            detail: detail.into(),
        });
    }

    fn finish(self) -> LemmaCertificate {
        let verdict = if self.clauses.iter().all(|c| c.holds) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        LemmaCertificate {
            kind: self.kind,
            inputs: self.inputs,
            recomputed: self.recomputed,
            clauses: self.clauses,
            verdict,
        }
    }
}

fn sol_str(s: &CanonicalSolution) -> String {
    format!("({}, {}, {})", s.x, s.y, s.z)
}

fn require_solutions(form: &CanonicalForm, sols: &[&CanonicalSolution]) -> Result<()> {
    match sols.iter().find(|s| !s.satisfies(form)) {
        Some(s) => Err(Error::Precondition(format!("{} does not solve {form}", sol_str(s)))),
        None => Ok(()),
    }
}

/// `|X Y' - X' Y|` and whether `X Y' > X' Y`.
fn cross_gap(s: &CanonicalSolution, t: &CanonicalSolution) -> (u128, bool) {
    let l = u128::from(s.x) * u128::from(t.y);
    let r = u128::from(t.x) * u128::from(s.y);
    (l.abs_diff(r), l > r)
}

fn gap_u64(d: u128) -> Result<u64> {
    u64::try_from(d).map_err(|_| Error::InvalidArgument(format!("exponent gap {d} exceeds 64 bits")))
}

/// `A^e mod m`.
fn pow_mod(base: &BigUint, e: u64, m: &BigUint) -> BigUint {
    base.modpow(&BigUint::from(e), m)
}

/// `A^d` exactly, when it is small enough to hold.
fn exact_pow(base: &BigUint, d: u64) -> Option<BigUint> {
    (d.saturating_mul(base.bits()) <= EXACT_BITS).then(|| pow(base, d))
}

/// Order data for the form must agree with a fresh computation.
fn check_order_data(b: &mut Builder, form: &CanonicalForm, od: &OrderData) {
    let m = pow(form.c(), od.z1);
    let fresh = least_pm_order(form.a(), &m).ok();
    let lhs = BigInt::from(pow(form.a(), od.n1));
    let rhs = BigInt::from(&m * &od.f) + od.delta1;
    b.clause(
        "order_data_consistent",
        fresh == Some((od.n1, od.delta1)) && lhs == rhs,
        format!("A^{} = C^{} * {} + ({}) with n1 least", od.n1, od.z1, od.f, od.delta1),
    );
}

/// Checks `XY' - X'Y != 0` and `A^|XY' - X'Y| = (-λ)^(Y+Y') (mod C^Z)` for two
/// solutions with `Z <= Z'`.
pub fn verify_pair_congruence(form: &CanonicalForm, s: &CanonicalSolution, t: &CanonicalSolution) -> Result<LemmaCertificate> {
    if s.z > t.z {
        return Err(Error::Precondition(format!(
            "first solution must have the smaller Z: {} vs {}",
            sol_str(s),
            sol_str(t)
        )));
    }
    require_solutions(form, &[s, t])?;
    let mut b = Builder::new(CertificateKind::PairCongruence, form);
    b.input("s", sol_str(s));
    b.input("s_prime", sol_str(t));

    let (d, _) = cross_gap(s, t);
    let d = gap_u64(d)?;
    let m = pow(form.c(), s.z);
    let lhs = pow_mod(form.a(), d, &m);
    let rhs = residue(&sign_pow(-form.lambda(), s.y + t.y), &m);
    b.value("exponent_gap", d);
    b.value("modulus", &m);
    b.value("lhs_residue", &lhs);
    b.value("rhs_residue", &rhs);
    b.clause("exponent_gap_nonzero", d != 0, format!("|XY' - X'Y| = {d}"));
    b.clause(
        "congruence",
        lhs == rhs,
        format!("A^{d} = {lhs}, (-λ)^(Y+Y') = {rhs} (mod {m})"),
    );
    Ok(b.finish())
}

/// At most two solutions have the least `Z`. An empty list passes.
pub fn verify_minimal_level_count(form: &CanonicalForm, sols: &[CanonicalSolution]) -> Result<LemmaCertificate> {
    require_solutions(form, &sols.iter().collect::<Vec<_>>())?;
    let mut b = Builder::new(CertificateKind::MinimalLevelCount, form);
    b.input("solutions", sols.iter().map(sol_str).collect::<Vec<_>>().join(" "));
    let z1 = sols.iter().map(|s| s.z).min();
    let at_min = z1.map_or(0, |z1| sols.iter().filter(|s| s.z == z1).count());
    b.value("z1", z1.map_or("none".into(), |z| z.to_string()));
    b.value("count_at_z1", at_min);
    b.clause("at_most_two_at_z1", at_min <= 2, format!("{at_min} solution(s) with Z = Z1"));
    Ok(b.finish())
}

/// Recomputes the chain ending in `gcd(C, f) <= Y2` for solutions `s1`, `s2`
/// with `Z(s1) = Z1 < Z(s2)`.
pub fn verify_gcd_chain(
    form: &CanonicalForm,
    od: &OrderData,
    s1: &CanonicalSolution,
    s2: &CanonicalSolution,
) -> Result<LemmaCertificate> {
    if s1.z != od.z1 || s2.z <= s1.z {
        return Err(Error::Precondition(format!(
            "need Z(s1) = Z1 = {} < Z(s2); got {} and {}",
            od.z1,
            sol_str(s1),
            sol_str(s2)
        )));
    }
    require_solutions(form, &[s1, s2])?;
    let mut b = Builder::new(CertificateKind::GcdChain, form);
    b.input("s1", sol_str(s1));
    b.input("s2", sol_str(s2));
    b.input("order_data", format!("Z1={} n1={} delta1={} f={}", od.z1, od.n1, od.delta1, od.f));
    check_order_data(&mut b, form, od);

    let (aa, bb, cc) = (form.a(), form.b(), form.c());
    let neg_lambda = -form.lambda();
    let (x1, y1, x2, y2) = (s1.x, s1.y, s2.x, s2.y);
    let (d, first_larger) = cross_gap(s1, s2);
    let d = gap_u64(d)?;
    let e_min = gap_u64(u128::from(x1) * u128::from(y2)).map(|v| v.min(x2.saturating_mul(y1)))?;
    let cz1 = pow(cc, od.z1);
    let cz1_next = &cz1 * cc;
    let eps = sign_pow(neg_lambda, y1 + y2);
    b.value("exponent_gap", d);
    b.value("min_cross_product", e_min);
    b.clause("exponent_gap_nonzero", d != 0, format!("|X1Y2 - X2Y1| = {d}"));

    // the two expansions modulo C^(Z1+1)
    let by1y2 = pow_mod(bb, y1 * y2, &cz1_next);
    let by1y2m = pow_mod(bb, y1 * (y2 - 1), &cz1_next);
    let first_rhs = BigInt::from(by1y2.clone()) * sign_pow(neg_lambda, y2)
        + sign_pow(neg_lambda, y2 - 1) * BigInt::from(&by1y2m * &cz1 * y2);
    let first_lhs = pow_mod(aa, x1 * y2, &cz1_next);
    let second_rhs = BigInt::from(by1y2) * sign_pow(neg_lambda, y1);
    let second_lhs = pow_mod(aa, x2 * y1, &cz1_next);
    b.clause(
        "expansion_first",
        first_lhs == residue(&first_rhs, &cz1_next),
        format!("A^(X1Y2) = {first_lhs} (mod {cz1_next})"),
    );
    b.clause(
        "expansion_second",
        second_lhs == residue(&second_rhs, &cz1_next),
        format!("A^(X2Y1) = {second_lhs} (mod {cz1_next})"),
    );

    // λ' from the sign of X1Y2 - X2Y1
    let lambda_prime = if first_larger {
        sign_pow(neg_lambda, y2 - 1)
    } else {
        -sign_pow(neg_lambda, y1 - 1)
    };
    let a_bar = mod_inverse(&BigInt::from(aa.clone()), &cz1_next)
        .ok_or_else(|| Error::Precondition("A is not invertible modulo C^(Z1+1)".into()))?;
    b.value("lambda_prime", &lambda_prime);
    b.value("a_bar", &a_bar);

    // A^d - ε = C^Z1 g: work modulo C^(Z1+1) f for the residue facts, and
    // keep g itself when it is small enough to print
    let big_mod = &cz1_next * &od.f;
    let ad_mod = pow_mod(aa, d, &big_mod);
    let diff_mod = residue(&(BigInt::from(ad_mod) - &eps), &big_mod);
    let divisible = (&diff_mod % &cz1).is_zero();
    b.clause(
        "exact_division_by_c_z1",
        divisible,
        format!("A^{d} - ({eps}) = 0 (mod {cz1})"),
    );
    if let Some(ad) = exact_pow(aa, d) {
        let g = (BigInt::from(ad) - &eps) / BigInt::from(cz1.clone());
        b.value("g", &g);
    }
    // g mod C and g mod f, from (A^d - ε) mod C^(Z1+1) f
    let g_mod_c = (&diff_mod / &cz1) % cc;
    let g_mod_f_zero = divisible && ((&diff_mod / &cz1) % &od.f).is_zero();
    b.value("g_mod_c", &g_mod_c);

    let scaled = lambda_prime.clone()
        * BigInt::from(pow_mod(&a_bar, e_min, &cz1_next))
        * BigInt::from(by1y2m.clone());
    let cong_rhs = residue(&(scaled.clone() * BigInt::from(&cz1 * y2)), &cz1_next);
    let cong_lhs = residue(&(BigInt::from(pow_mod(aa, d, &cz1_next)) - &eps), &cz1_next);
    b.clause(
        "difference_mod_next_power",
        cong_lhs == cong_rhs,
        format!("A^{d} - ({eps}) = {cong_lhs} (mod {cz1_next})"),
    );
    let g_rhs = residue(&(scaled * y2), cc);
    b.clause(
        "g_congruence",
        g_mod_c == g_rhs,
        format!("g = {g_mod_c}, λ' Ā^min B^(Y1(Y2-1)) Y2 = {g_rhs} (mod {cc})"),
    );

    let gcd_cg = cc.gcd(&g_mod_c);
    let gcd_cy2 = cc.gcd(&BigUint::from(y2));
    b.value("gcd_c_g", &gcd_cg);
    b.value("gcd_c_y2", &gcd_cy2);
    b.clause("gcd_c_g_equals_gcd_c_y2", gcd_cg == gcd_cy2, format!("{gcd_cg} vs {gcd_cy2}"));

    b.clause("n1_divides_gap", d % od.n1 == 0, format!("n1 = {} | {d}", od.n1));
    b.clause("f_divides_g", g_mod_f_zero, format!("f = {} | g", od.f));
    let gcd_cf = cc.gcd(&od.f);
    b.value("gcd_c_f", &gcd_cf);
    b.clause(
        "gcd_c_f_at_most_y2",
        gcd_cf <= BigUint::from(y2),
        format!("gcd(C, f) = {gcd_cf} <= Y2 = {y2}"),
    );
    Ok(b.finish())
}

/// Recomputes the relations forced by three triples with
/// `Z(s1) = Z1 < Z(s2) <= Z(s3)`. The triples need not solve the equation,
/// so hand-built fixtures can exercise every relation.
pub fn verify_triple_chain(
    form: &CanonicalForm,
    od: &OrderData,
    s1: &CanonicalSolution,
    s2: &CanonicalSolution,
    s3: &CanonicalSolution,
) -> Result<LemmaCertificate> {
    if s1.z != od.z1 || !(s1.z < s2.z && s2.z <= s3.z) {
        return Err(Error::Precondition(format!(
            "need Z(s1) = Z1 = {} < Z(s2) <= Z(s3); got {}, {}, {}",
            od.z1,
            sol_str(s1),
            sol_str(s2),
            sol_str(s3)
        )));
    }
    let mut b = Builder::new(CertificateKind::TripleChain, form);
    for (k, s) in [("s1", s1), ("s2", s2), ("s3", s3)] {
        b.input(k, sol_str(s));
    }
    b.input("order_data", format!("Z1={} n1={} delta1={} f={}", od.z1, od.n1, od.delta1, od.f));
    b.value(
        "triples_solve_equation",
        [s1, s2, s3].iter().all(|s| s.satisfies(form)),
    );
    check_order_data(&mut b, form, od);

    let (aa, cc) = (form.a(), form.c());
    let (x2, y2, x3, y3) = (s2.x, s2.y, s3.x, s3.y);
    let (d, _) = cross_gap(s2, s3);
    let d = gap_u64(d)?;
    let Some(ad) = exact_pow(aa, d) else {
        return Err(Error::InvalidArgument(format!("A^{d} is too large to expand")));
    };
    let eps = sign_pow(-form.lambda(), y2 + y3);
    let cz1 = pow(cc, od.z1);
    let cz1_next = &cz1 * cc;
    b.value("exponent_gap", d);
    b.clause("exponent_gap_nonzero", d != 0, format!("|X2Y3 - X3Y2| = {d}"));

    let diff = BigInt::from(ad) - &eps;
    let (h, rem) = diff.div_rem(&BigInt::from(cz1_next.clone()));
    b.clause(
        "congruence_mod_next_power",
        rem.is_zero(),
        format!("A^{d} = ({eps}) (mod {cz1_next})"),
    );
    b.value("h", &h);
    b.clause("h_positive", rem.is_zero() && h.is_positive(), format!("h = {h}"));

    let n1_divides = d % od.n1 == 0;
    b.clause("n1_divides_gap", n1_divides, format!("n1 = {} | {d}", od.n1));
    let n2 = d / od.n1;
    b.value("n2", n2);

    let delta_pow = sign_pow(od.delta1, n2);
    b.value("delta1_pow_n2", &delta_pow);
    b.value("neg_lambda_pow", &eps);
    b.clause("sign_match", delta_pow == eps, format!("delta1^n2 = {delta_pow}, (-λ)^(Y2+Y3) = {eps}"));

    if n1_divides && n2 <= MAX_BINOMIAL_TERMS {
        // f * sum_{i=1}^{n2} binom(n2, i) delta1^(n2-i) (C^Z1 f)^(i-1)
        let unit = BigInt::from(cz1.clone() * &od.f);
        let mut sum = BigInt::zero();
        let mut binom = BigInt::one();
        let mut unit_pow = BigInt::one();
        for i in 1..=n2 {
            binom = binom * BigInt::from(n2 - i + 1) / BigInt::from(i);
            let sign = if od.delta1 < 0 && (n2 - i) % 2 == 1 { -1 } else { 1 };
            sum += &binom * &unit_pow * sign;
            unit_pow *= &unit;
        }
        let rhs = sum * BigInt::from(od.f.clone());
        let lhs = BigInt::from(cc.clone()) * &h;
        b.value("c_times_h", &lhs);
        b.value("binomial_sum", &rhs);
        b.clause("binomial_identity", lhs == rhs, format!("C h = {lhs}, expansion = {rhs}"));
    } else {
        b.clause("binomial_identity", false, format!("n2 = {n2} not expandable"));
    }

    let fn2 = &od.f * n2;
    let fn2_mod_c = &fn2 % cc;
    b.value("f_n2_mod_c", &fn2_mod_c);
    b.clause("f_n2_divisible_by_c", fn2_mod_c.is_zero(), format!("f n2 = {fn2} = {fn2_mod_c} (mod {cc})"));

    let gcd_cf = cc.gcd(&od.f);
    let lower = &gcd_cf * n2;
    b.value("gcd_c_f", &gcd_cf);
    b.clause("n2_gcd_at_least_c", lower >= *cc, format!("n2 gcd(C, f) = {lower} >= C = {cc}"));
    b.clause(
        "gcd_c_f_at_most_y2",
        gcd_cf <= BigUint::from(y2),
        format!("gcd(C, f) = {gcd_cf} <= Y2 = {y2}"),
    );
    let cross_max = (u128::from(x2) * u128::from(y3)).max(u128::from(x3) * u128::from(y2));
    let ceiling = BigUint::from(cross_max) * y2;
    b.value("c_ceiling", &ceiling);
    b.clause(
        "c_below_cross_product",
        *cc < ceiling,
        format!("C = {cc} < Y2 max{{X2Y3, X3Y2}} = {ceiling}"),
    );
    Ok(b.finish())
}

/// All certificates that apply to one instance's solutions up to a cap.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceCertificates {
    pub instance: Instance,
    pub cap: u64,
    pub form: CanonicalForm,
    pub solutions: Vec<CanonicalSolution>,
    pub order_data: Option<OrderData>,
    pub certificates: Vec<LemmaCertificate>,
}

impl InstanceCertificates {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(LemmaCertificate::passed)
    }
}

/// Enumerates to `cap`, canonicalizes and certifies every applicable pair
/// and triple.
pub fn certify_instance(inst: &Instance, cap: u64, cfg: &SieveConfig) -> Result<InstanceCertificates> {
    let set = enumerate_solutions(inst, cap, cfg)?;
    certify_solutions(inst, cap, &set.solutions)
}

/// Certificates for an already enumerated solution list.
pub fn certify_solutions(inst: &Instance, cap: u64, sols: &[crate::Solution]) -> Result<InstanceCertificates> {
    let form = canonicalize(inst);
    let mut canon = sols
        .iter()
        .map(|s| to_canonical_solution(&form, s))
        .collect::<Result<Vec<_>>>()?;
    canon.sort_by_key(|s| (s.z, s.x, s.y));

    let mut certificates = Vec::new();
    let od = if canon.is_empty() {
        None
    } else {
        Some(order_data(&form, &canon)?)
    };
    for (i, s) in canon.iter().enumerate() {
        for t in &canon[i + 1..] {
            certificates.push(verify_pair_congruence(&form, s, t)?);
        }
    }
    certificates.push(verify_minimal_level_count(&form, &canon)?);
    if let Some(od) = &od {
        let lowest: Vec<_> = canon.iter().filter(|s| s.z == od.z1).collect();
        let higher: Vec<_> = canon.iter().filter(|s| s.z > od.z1).collect();
        for s1 in &lowest {
            for s2 in &higher {
                certificates.push(verify_gcd_chain(&form, od, s1, s2)?);
            }
        }
        for s1 in &lowest {
            for (j, s2) in higher.iter().enumerate() {
                for s3 in &higher[j + 1..] {
                    certificates.push(verify_triple_chain(&form, od, s1, s2, s3)?);
                }
            }
        }
    }
    Ok(InstanceCertificates {
        instance: inst.clone(),
        cap,
        form,
        solutions: canon,
        order_data: od,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: u64, b: u64, c: u64) -> CanonicalForm {
        canonicalize(&Instance::from_u64(a, b, c).unwrap())
    }

    fn cs(x: u64, y: u64, z: u64) -> CanonicalSolution {
        CanonicalSolution::new(x, y, z)
    }

    #[test]
    fn pair_congruences() {
        let f = form(3, 5, 2);
        let c = verify_pair_congruence(&f, &cs(3, 1, 1), &cs(7, 1, 3)).unwrap();
        assert!(c.passed());
        assert_eq!(c.value("exponent_gap"), Some("4"));
        assert_eq!(c.value("lhs_residue"), Some("1"));
        let c = verify_pair_congruence(&f, &cs(3, 1, 1), &cs(5, 3, 1)).unwrap();
        assert!(c.passed());
        assert_eq!(c.value("exponent_gap"), Some("4"));
        let f = form(2, 3, 5);
        let c = verify_pair_congruence(&f, &cs(1, 1, 1), &cs(4, 2, 2)).unwrap();
        assert!(c.passed());
        assert_eq!(c.value("exponent_gap"), Some("2"));
        assert_eq!(c.value("rhs_residue"), Some("4"));
        assert!(verify_pair_congruence(&f, &cs(4, 2, 2), &cs(1, 1, 1)).is_err());
        assert!(verify_pair_congruence(&f, &cs(1, 1, 1), &cs(4, 2, 3)).is_err());
    }

    #[test]
    fn minimal_level() {
        let f = form(3, 5, 2);
        let c = verify_minimal_level_count(&f, &[cs(3, 1, 1), cs(5, 3, 1), cs(7, 1, 3)]).unwrap();
        assert!(c.passed());
        assert_eq!(c.value("count_at_z1"), Some("2"));
        let c = verify_minimal_level_count(&f, &[]).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn gcd_chain_on_showcase_data() {
        let f = form(3, 5, 2);
        let od = OrderData::compute(&f, 1).unwrap();
        assert_eq!((od.z1, od.n1, od.delta1), (1, 2, -1));
        assert_eq!(od.f, BigUint::one());
        let c = verify_gcd_chain(&f, &od, &cs(3, 1, 1), &cs(7, 1, 3)).unwrap();
        assert!(c.passed(), "{:?}", c.failed_clauses().collect::<Vec<_>>());
        assert_eq!(c.value("g"), Some("3"));
        assert_eq!(c.value("gcd_c_g"), Some("1"));
        let c = verify_gcd_chain(&f, &od, &cs(5, 3, 1), &cs(7, 1, 3)).unwrap();
        assert!(c.passed(), "{:?}", c.failed_clauses().collect::<Vec<_>>());

        let f = form(2, 3, 5);
        let od = OrderData::compute(&f, 1).unwrap();
        let c = verify_gcd_chain(&f, &od, &cs(1, 1, 1), &cs(4, 2, 2)).unwrap();
        assert!(c.passed(), "{:?}", c.failed_clauses().collect::<Vec<_>>());
        assert_eq!(c.value("g"), Some("1"));
        assert_eq!(c.value("gcd_c_y2"), Some("1"));
        assert!(verify_gcd_chain(&f, &od, &cs(4, 2, 2), &cs(1, 1, 1)).is_err());
    }

    #[test]
    fn tampered_order_data_fails_a_clause() {
        let f = form(3, 5, 2);
        let mut od = OrderData::compute(&f, 1).unwrap();
        od.f = BigUint::from(2u32);
        let c = verify_gcd_chain(&f, &od, &cs(3, 1, 1), &cs(7, 1, 3)).unwrap();
        assert!(!c.passed());
        assert!(!c.clause("order_data_consistent").unwrap().holds);
    }

    #[test]
    fn triple_chain_on_a_hand_built_fixture() {
        // A = 2, B = 3, C = 5, λ = +1 and Z1 = 1: 2^2 = 5 - 1, so n1 = 2,
        // delta1 = -1, f = 1. The triples satisfy the congruences only.
        let f = form(2, 3, 5);
        let od = OrderData::compute(&f, 1).unwrap();
        let c = verify_triple_chain(&f, &od, &cs(1, 1, 1), &cs(6, 1, 2), &cs(2, 2, 2)).unwrap();
        assert!(c.passed(), "{:?}", c.failed_clauses().collect::<Vec<_>>());
        assert_eq!(c.value("exponent_gap"), Some("10"));
        assert_eq!(c.value("h"), Some("41"));
        assert_eq!(c.value("n2"), Some("5"));
        assert_eq!(c.value("delta1_pow_n2"), Some("-1"));
        assert_eq!(c.value("c_times_h"), Some("205"));
        assert_eq!(c.value("binomial_sum"), Some("205"));
        assert_eq!(c.value("f_n2_mod_c"), Some("0"));
        assert_eq!(c.value("c_ceiling"), Some("12"));
        assert_eq!(c.value("triples_solve_equation"), Some("false"));
    }

    #[test]
    fn triple_chain_preconditions() {
        let f = form(3, 5, 2);
        let od = OrderData::compute(&f, 1).unwrap();
        // Z1 = Z2 = 1 is not strict
        let r = verify_triple_chain(&f, &od, &cs(3, 1, 1), &cs(5, 3, 1), &cs(7, 1, 3));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn instance_certificates() {
        let inst = Instance::from_u64(3, 5, 2).unwrap();
        let r = certify_instance(&inst, 100, &SieveConfig::default()).unwrap();
        assert!(r.all_pass());
        let od = r.order_data.as_ref().unwrap();
        assert_eq!((od.z1, od.n1, od.delta1, od.f.clone()), (1, 2, -1, BigUint::one()));
        let kinds: Vec<_> = r.certificates.iter().map(|c| c.kind).collect();
        assert_eq!(kinds.iter().filter(|k| **k == CertificateKind::PairCongruence).count(), 3);
        assert_eq!(kinds.iter().filter(|k| **k == CertificateKind::GcdChain).count(), 2);
        assert!(!kinds.contains(&CertificateKind::TripleChain));
        let json = serde_json::to_value(&r.certificates[0]).unwrap();
        assert_eq!(json["kind"], "pair_congruence");
        assert_eq!(json["verdict"], "pass");
    }
}
