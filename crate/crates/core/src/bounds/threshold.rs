//! Positivity certificates for threshold functions of the shape
//! `F(t) = t − K (c1 + ln t)^d − c0` on a half-line `[t0, ∞)`.
//!
//! `F(t0) > 0` is checked on an outward-rounded enclosure. For `t >= t0` the
//! derivative `F'(t) = 1 − d K (c1 + ln t)^(d−1) / t` is bounded below by
//! `F'(t0)` because `(c1 + ln t)^(d−1) / t` decreases once
//! `c1 + ln t >= d − 1`, i.e. `t >= e^(d−1−c1)`. That precondition is
//! checked, not assumed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalCtx};

/// `num / den · (ln log_arg)^log_power`; `log_power = 0` means a plain
/// rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledLog {
    pub num: u128,
    pub den: u128,
    pub log_arg: u64,
    pub log_power: u32,
}

impl ScaledLog {
    pub const fn rational(num: u128, den: u128) -> Self {
        ScaledLog {
            num,
            den,
            log_arg: 1,
            log_power: 0,
        }
    }

    pub const fn int(v: u128) -> Self {
        Self::rational(v, 1)
    }

    /// `num/den · (ln arg)^power`.
    pub const fn with_log(num: u128, den: u128, arg: u64, power: u32) -> Self {
        ScaledLog {
            num,
            den,
            log_arg: arg,
            log_power: power,
        }
    }

    pub fn eval(&self, ctx: &IntervalCtx) -> Interval {
        let r = ctx.ratio(self.num, self.den);
        if self.log_power == 0 {
            return r;
        }
        let l = ctx.ln_int(self.log_arg);
        let p = ctx.powi(&l, self.log_power);
        ctx.mul(&r, &p)
    }

    fn describe(&self) -> String {
        let base = if self.den == 1 {
            format!("{}", self.num)
        } else {
            format!("{}/{}", self.num, self.den)
        };
        match self.log_power {
            0 => base,
            1 => format!("{base}·ln {}", self.log_arg),
            p => format!("{base}·(ln {})^{p}", self.log_arg),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdFamily {
    /// `F(t) = t − K (c1 + ln t)^2 − c0`
    QuadraticLog,
    /// `F(t) = t − K (ln t)^9`
    NonicLog,
}

impl ThresholdFamily {
    fn degree(self) -> u32 {
        match self {
            ThresholdFamily::QuadraticLog => 2,
            ThresholdFamily::NonicLog => 9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdSpec {
    pub family: ThresholdFamily,
    pub k: ScaledLog,
    pub c1: ScaledLog,
    pub c0: ScaledLog,
    /// Claimed start of the positivity half-line.
    pub t0: ScaledLog,
}

impl ThresholdSpec {
    pub fn quadratic_log(k: ScaledLog, c1: ScaledLog, c0: ScaledLog, t0: ScaledLog) -> Result<Self> {
        Self::validated(ThresholdSpec {
            family: ThresholdFamily::QuadraticLog,
            k,
            c1,
            c0,
            t0,
        })
    }

    pub fn nonic_log(k: ScaledLog, t0: ScaledLog) -> Result<Self> {
        Self::validated(ThresholdSpec {
            family: ThresholdFamily::NonicLog,
            k,
            c1: ScaledLog::int(0),
            c0: ScaledLog::int(0),
            t0,
        })
    }

    fn validated(spec: Self) -> Result<Self> {
        for s in [&spec.k, &spec.c1, &spec.c0, &spec.t0] {
            if s.den == 0 {
                return Err(Error::InvalidArgument("zero denominator in threshold coefficient".into()));
            }
            if s.log_power > 0 && s.log_arg < 2 {
                return Err(Error::InvalidArgument("logarithm argument must be >= 2".into()));
            }
        }
        let ctx = IntervalCtx::new(64);
        if !spec.k.eval(&ctx).is_positive() {
            return Err(Error::InvalidArgument("threshold coefficient K must be positive".into()));
        }
        if !ctx.int(1).certainly_lt(&spec.t0.eval(&ctx)) {
            return Err(Error::InvalidArgument("threshold start t0 must exceed 1".into()));
        }
        Ok(spec)
    }

    pub fn describe(&self) -> String {
        let d = self.family.degree();
        let head = match self.family {
            ThresholdFamily::QuadraticLog => format!(
                "F(t) = t - {}·({} + ln t)^{d} - {}",
                self.k.describe(),
                self.c1.describe(),
                self.c0.describe()
            ),
            ThresholdFamily::NonicLog => format!("F(t) = t - {}·(ln t)^{d}", self.k.describe()),
        };
        format!("{head}, t0 = {}", self.t0.describe())
    }
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub label: &'static str,
    pub value: Interval,
}

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub holds: bool,
    /// Set when `holds` is false.
    pub failure: Option<String>,
    pub precision: usize,
    pub trace: Vec<TraceEntry>,
}

impl ThresholdReport {
    pub fn value(&self, label: &str) -> Option<&Interval> {
        self.trace.iter().find(|e| e.label == label).map(|e| &e.value)
    }
}

/// Certifies `F(t) > 0` for every `t >= t0`.
pub fn verify_threshold(spec: &ThresholdSpec, prec: usize) -> ThresholdReport {
    let ctx = IntervalCtx::new(prec);
    let d = spec.family.degree();
    let k = spec.k.eval(&ctx);
    let c1 = spec.c1.eval(&ctx);
    let c0 = spec.c0.eval(&ctx);
    let t0 = spec.t0.eval(&ctx);

    let mut trace = vec![
        TraceEntry { label: "t0", value: t0.clone() },
        TraceEntry { label: "K", value: k.clone() },
    ];

    let mono_exp = ctx.sub(&ctx.int(u64::from(d - 1)), &c1);
    let mono_start = ctx.exp(&mono_exp);
    trace.push(TraceEntry { label: "monotone_from", value: mono_start.clone() });

    let shifted = ctx.add(&c1, &ctx.ln(&t0));
    let f = ctx.sub(&ctx.sub(&t0, &ctx.mul(&k, &ctx.powi(&shifted, d))), &c0);
    trace.push(TraceEntry { label: "F(t0)", value: f.clone() });

    let slope = ctx.div(
        &ctx.mul(&ctx.mul(&ctx.int(u64::from(d)), &k), &ctx.powi(&shifted, d - 1)),
        &t0,
    );
    let df = ctx.sub(&ctx.int(1), &slope);
    trace.push(TraceEntry { label: "F'(t0)", value: df.clone() });

    let failure = if !t0.certainly_ge(&mono_start) {
        Some(format!(
            "monotonicity precondition fails: t0 = {t0} is not >= e^({}-c1) = {mono_start}",
            d - 1
        ))
    } else if !f.is_positive() {
        Some(format!("F(t0) = {f} is not certainly positive"))
    } else if !df.is_positive() {
        Some(format!("F'(t0) = {df} is not certainly positive"))
    } else {
        None
    };

    ThresholdReport {
        holds: failure.is_none(),
        failure,
        precision: ctx.precision(),
        trace,
    }
}

/// One positivity claim of the cap derivations. The even-`c` claim is
/// parametrised by `c` and checked at several sample values.
#[derive(Clone, Debug)]
pub struct ProofObligation {
    pub label: &'static str,
    pub cases: Vec<(String, ThresholdSpec)>,
}

/// The four half-line positivity claims the solution caps rest on.
pub fn proof_obligations() -> Vec<ProofObligation> {
    let quad = |k, c1, c0, t0| ThresholdSpec::quadratic_log(k, c1, c0, t0).expect("valid spec");
    vec![
        ProofObligation {
            label: "small-term case, F(6000) > 0",
            cases: vec![(
                "K = 64.62, c1 = 0.88, c0 = 2".into(),
                quad(
                    ScaledLog::rational(6462, 100),
                    ScaledLog::rational(88, 100),
                    ScaledLog::int(2),
                    ScaledLog::int(6000),
                ),
            )],
        },
        ProofObligation {
            label: "even a, F(6500 (ln a)^2) > 0",
            cases: vec![(
                "a = 2".into(),
                quad(
                    ScaledLog::with_log(3914, 100, 2, 1),
                    ScaledLog::rational(144, 100),
                    ScaledLog::int(0),
                    ScaledLog::with_log(6500, 1, 2, 2),
                ),
            )],
        },
        ProofObligation {
            label: "even c, F(3000 (ln c)^2) > 0",
            cases: [2u64, 3, 5, 1_000_000]
                .into_iter()
                .map(|c| {
                    (
                        format!("c = {c}"),
                        quad(
                            ScaledLog::with_log(1957, 100, c, 1),
                            ScaledLog::rational(144, 100),
                            ScaledLog::int(0),
                            ScaledLog::with_log(3000, 1, c, 2),
                        ),
                    )
                })
                .collect(),
        },
        ProofObligation {
            label: "largest base, F(5e27) > 0",
            cases: vec![(
                "K = 6500^3".into(),
                ThresholdSpec::nonic_log(ScaledLog::int(6500u128.pow(3)), ScaledLog::int(5 * 10u128.pow(27)))
                    .expect("valid spec"),
            )],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // F(t0) from a 60-digit mpmath evaluation of each claim.
    const F_6000: f64 = 68.00981634176945;
    const F_EVEN_A: f64 = 681.4194582221612;
    const F_EVEN_C: [f64; 4] = [411.48104300793545, 1625.1695487892474, 4365.408150451651, 514197.1246193301];
    const F_NONIC: f64 = 2.042796765083299e26;

    fn check_f(report: &ThresholdReport, expect: f64) {
        let f = report.value("F(t0)").unwrap();
        let tol = expect.abs() * 1e-12;
        assert!(f.lo_f64() - tol <= expect && expect <= f.hi_f64() + tol, "{f} vs {expect}");
    }

    #[test]
    fn all_obligations_hold() {
        let ob = proof_obligations();
        assert_eq!(ob.len(), 4);
        let cases: Vec<_> = ob.iter().flat_map(|o| o.cases.iter()).collect();
        let expected = [F_6000, F_EVEN_A, F_EVEN_C[0], F_EVEN_C[1], F_EVEN_C[2], F_EVEN_C[3], F_NONIC];
        assert_eq!(cases.len(), expected.len());
        for ((label, spec), want) in cases.into_iter().zip(expected) {
            let r = verify_threshold(spec, 128);
            assert!(r.holds, "{label}: {:?}", r.failure);
            check_f(&r, want);
        }
    }

    #[test]
    fn stable_under_precision_doubling() {
        for (label, spec) in proof_obligations().into_iter().flat_map(|o| o.cases) {
            for prec in [64, 128, 256, 512] {
                assert!(verify_threshold(&spec, prec).holds, "{label} at {prec}");
            }
        }
    }

    #[test]
    fn too_early_start_fails() {
        // F(5000) = 5000 - 64.62 (0.88 + ln 5000)^2 - 2 < 0
        let spec = ThresholdSpec::quadratic_log(
            ScaledLog::rational(6462, 100),
            ScaledLog::rational(88, 100),
            ScaledLog::int(2),
            ScaledLog::int(5000),
        )
        .unwrap();
        let r = verify_threshold(&spec, 128);
        assert!(!r.holds);
        assert!(r.failure.unwrap().contains("F(t0)"));
    }

    #[test]
    fn nonic_claim_fails_below_its_start() {
        let spec = ThresholdSpec::nonic_log(ScaledLog::int(6500u128.pow(3)), ScaledLog::int(4 * 10u128.pow(27)))
            .unwrap();
        assert!(!verify_threshold(&spec, 128).holds);
    }

    #[test]
    fn monotonicity_precondition_is_reported() {
        // e^(8) ≈ 2981 > t0 = 100 for the nonic family, even with tiny K.
        let spec = ThresholdSpec::nonic_log(ScaledLog::rational(1, 10u128.pow(30)), ScaledLog::int(100)).unwrap();
        let r = verify_threshold(&spec, 128);
        assert!(!r.holds);
        assert!(r.failure.unwrap().contains("monotonicity"));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ThresholdSpec::nonic_log(ScaledLog::int(0), ScaledLog::int(10)).is_err());
        assert!(ThresholdSpec::nonic_log(ScaledLog::int(1), ScaledLog::rational(1, 2)).is_err());
        assert!(ThresholdSpec::nonic_log(ScaledLog::with_log(1, 1, 1, 2), ScaledLog::int(10)).is_err());
    }
}
