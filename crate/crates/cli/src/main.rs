use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use ternexp::bounds::{conditional_quadratic_bound, proof_obligations, solution_bound, verify_threshold};
use ternexp::enumerate::{count_solutions, enumerate_solutions, search_volume, SieveConfig, DEFAULT_VOLUME_LIMIT};
use ternexp::interval::DEFAULT_PRECISION;
use ternexp::lemma_lab::{certify_solutions, pillai_count, Verdict};
use ternexp::survey::{run_survey, CapMode, SurveyConfig};
use ternexp::{Error, Instance};

/// Solver and certificate checker for a^x + b^y = c^z.
#[derive(Parser)]
#[command(name = "ternexp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find all solutions up to a cap, or up to the unconditional bound.
    Solve {
        #[command(flatten)]
        bases: Bases,
        #[command(flatten)]
        cap: CapArgs,
        /// Search-volume ceiling for --rigorous.
        #[arg(long, default_value_t = DEFAULT_VOLUME_LIMIT)]
        volume_limit: f64,
        #[arg(long)]
        json: bool,
    },
    /// Print the explicit exponent caps of an instance.
    Bound {
        #[command(flatten)]
        bases: Bases,
        #[arg(long)]
        json: bool,
    },
    /// Verify the positivity claims the caps rest on.
    Thresholds {
        /// Working precision in bits; each claim is also rechecked at twice this.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate, canonicalize and print every applicable certificate.
    Certify {
        #[command(flatten)]
        bases: Bases,
        #[arg(long, default_value_t = 100)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Solutions of A^m + sign·B^n = k with exponents up to the cap.
    Pillai {
        a: BigUint,
        b: BigUint,
        k: BigUint,
        /// +1 or -1.
        #[arg(allow_hyphen_values = true)]
        sign: i8,
        #[arg(long, default_value_t = 40)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Scan every pairwise coprime triple with bases in [min, max].
    Survey(SurveyArgs),
}

#[derive(Args)]
struct Bases {
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

impl Bases {
    fn instance(&self) -> ternexp::Result<Instance> {
        Instance::new(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[derive(Args)]
#[group(multiple = false)]
struct CapArgs {
    /// Largest exponent searched [default: 100].
    #[arg(long)]
    cap: Option<u64>,
    /// Search up to the unconditional bound, making the count exact.
    #[arg(long)]
    rigorous: bool,
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long, default_value_t = 2)]
    min: u64,
    #[arg(long)]
    max: u64,
    #[command(flatten)]
    cap: CapArgs,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// JSON-lines output file.
    #[arg(long)]
    out: PathBuf,
    /// Defaults to the output path with ".checkpoint" appended.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    chunk_size: usize,
    /// Stop after this many triples; a later run resumes from the checkpoint.
    #[arg(long)]
    stop_after: Option<u64>,
    /// Visit both (a, b, c) and (b, a, c).
    #[arg(long)]
    no_dedupe: bool,
    #[arg(long)]
    no_certificates: bool,
    #[arg(long, default_value_t = DEFAULT_VOLUME_LIMIT)]
    volume_limit: f64,
    #[arg(long)]
    json: bool,
}

/// A run that completed but whose checks did not all pass.
struct ChecksFailed;

enum Failure {
    Checks,
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<ChecksFailed> for Failure {
    fn from(_: ChecksFailed) -> Self {
        Failure::Checks
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInstance(_) | Error::InvalidArgument(_) | Error::Precondition(_) => 2,
        Error::Checkpoint { .. } | Error::Io { .. } => 2,
        Error::ResourceLimit { .. } => 3,
        Error::Internal(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            bases,
            cap,
            volume_limit,
            json,
        } => solve(&bases, &cap, volume_limit, json),
        Command::Bound { bases, json } => bound(&bases, json),
        Command::Thresholds { precision, json } => thresholds(precision, json),
        Command::Certify { bases, cap, json } => certify(&bases, cap, json),
        Command::Pillai {
            a,
            b,
            k,
            sign,
            cap,
            json,
        } => pillai(&a, &b, &k, sign, cap, json),
        Command::Survey(args) => survey(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Module(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn solve(bases: &Bases, cap: &CapArgs, volume_limit: f64, json: bool) -> Result<(), Failure> {
    let inst = bases.instance()?;
    let cfg = SieveConfig::default();
    let (set, report) = if cap.rigorous {
        let count = count_solutions(&inst, &cfg, volume_limit)?;
        (count.set, Some(count.report))
    } else {
        (enumerate_solutions(&inst, cap.cap.unwrap_or(100), &cfg)?, None)
    };
    if json {
        print_json(&json!({
            "instance": &set.instance,
            "cap": set.cap,
            "rigorous": cap.rigorous,
            "N": set.len(),
            "solutions": &set.solutions,
            "stats": &set.stats,
            "moduli": &set.moduli,
        }));
        return Ok(());
    }
    let qualifier = if cap.rigorous {
        "unconditional".to_string()
    } else {
        format!("exponents up to {}", set.cap)
    };
    println!("N{} = {} ({qualifier})", set.instance, set.len());
    if let Some(r) = &report {
        println!(
            "cap {} = floor(6500 (ln {})^3), 6500 (ln {})^3 in {}",
            r.bound, r.max_base, r.max_base, r.formula_value
        );
    }
    if set.is_empty() {
        println!("no solutions");
    }
    for s in &set.solutions {
        println!("  {s}  {}^{} + {}^{} = {}^{}", bases.a, s.x, bases.b, s.y, bases.c, s.z);
    }
    println!(
        "candidates {}, past sieve {}, exact checks {}",
        set.stats.candidates_examined, set.stats.candidates_surviving_sieve, set.stats.exact_checks
    );
    Ok(())
}

fn bound(bases: &Bases, json: bool) -> Result<(), Failure> {
    let inst = bases.instance()?;
    let r = solution_bound(&inst);
    let quad = conditional_quadratic_bound(&inst);
    let volume = search_volume(&inst, r.bound);
    if json {
        print_json(&json!({
            "instance": &inst,
            "max_base": r.max_base.to_string(),
            "log_max": [r.log_max.lo_f64(), r.log_max.hi_f64()],
            "formula_value": [r.formula_value.lo_f64(), r.formula_value.hi_f64()],
            "bound": r.bound,
            "small_term_bound": quad,
            "search_volume": volume,
        }));
        return Ok(());
    }
    println!("instance           {inst}");
    println!("ln {:<15} {}", r.max_base, r.log_max);
    println!("6500 (ln max)^3    {}", r.formula_value);
    println!("exponent cap       {}", r.bound);
    println!("4663 (ln max)^2    {quad}  (solutions with min{{a^2x, b^2y}} < c^z)");
    println!("search volume      {volume:.3e}");
    Ok(())
}

fn thresholds(precision: usize, json: bool) -> Result<(), Failure> {
    if precision < 32 {
        return Err(Error::InvalidArgument("precision must be at least 32 bits".into()).into());
    }
    let mut rows = Vec::new();
    let mut all = true;
    for ob in proof_obligations() {
        let mut cases = Vec::new();
        let mut row_holds = true;
        for (label, spec) in &ob.cases {
            let r = verify_threshold(spec, precision);
            let r2 = verify_threshold(spec, 2 * precision);
            let f = r.value("F(t0)").map(|v| v.to_string()).unwrap_or_default();
            let stable = r.holds == r2.holds;
            row_holds &= r.holds && stable;
            cases.push(json!({
                "case": label,
                "spec": spec.describe(),
                "holds": r.holds,
                "holds_at_double_precision": r2.holds,
                "F(t0)": f,
                "failure": r.failure,
            }));
        }
        all &= row_holds;
        rows.push(json!({ "claim": ob.label, "holds": row_holds, "cases": cases }));
    }
    if json {
        print_json(&json!({ "precision": precision, "claims": rows }));
    } else {
        for row in &rows {
            let verdict = if row["holds"] == true { "holds" } else { "FAILS" };
            println!("{:<36} {verdict}", row["claim"].as_str().unwrap_or_default());
            for c in row["cases"].as_array().into_iter().flatten() {
                println!(
                    "    {:<28} F(t0) in {}  ({} bits: {}, {} bits: {})",
                    c["case"].as_str().unwrap_or_default(),
                    c["F(t0)"].as_str().unwrap_or_default(),
                    precision,
                    c["holds"],
                    2 * precision,
                    c["holds_at_double_precision"],
                );
                if let Some(f) = c["failure"].as_str() {
                    println!("    {f}");
                }
            }
        }
    }
    if all {
        Ok(())
    } else {
        Err(ChecksFailed.into())
    }
}

fn certify(bases: &Bases, cap: u64, json: bool) -> Result<(), Failure> {
    let inst = bases.instance()?;
    let set = enumerate_solutions(&inst, cap, &SieveConfig::default())?;
    let certs = certify_solutions(&inst, cap, &set.solutions)?;
    if json {
        print_json(&certs);
    } else {
        println!("instance {inst}, exponents up to {cap}, N = {}", set.len());
        println!("canonical form {} ({})", certs.form, certs.form.perm());
        for s in &certs.solutions {
            println!("  (X, Y, Z) = ({}, {}, {})", s.x, s.y, s.z);
        }
        match &certs.order_data {
            Some(od) => println!(
                "order data Z1 = {}, n1 = {}, delta1 = {}, f = {}",
                od.z1, od.n1, od.delta1, od.f
            ),
            None => println!("no solutions, no order data"),
        }
        for c in &certs.certificates {
            let verdict = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            };
            let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{:?} [{}]: {verdict}", c.kind, inputs.join(", "));
            for cl in &c.clauses {
                println!("    {} {:<28} {}", if cl.holds { "ok  " } else { "FAIL" }, cl.name, cl.detail);
            }
        }
    }
    if certs.all_pass() {
        Ok(())
    } else {
        Err(ChecksFailed.into())
    }
}

fn pillai(a: &BigUint, b: &BigUint, k: &BigUint, sign: i8, cap: u64, json: bool) -> Result<(), Failure> {
    let r = pillai_count(a, b, k, sign, cap)?;
    if json {
        print_json(&json!({
            "A": a.to_string(),
            "B": b.to_string(),
            "k": k.to_string(),
            "sign": sign,
            "cap": cap,
            "count": r.count,
            "solutions": &r.solutions,
        }));
        return Ok(());
    }
    let op = if sign > 0 { '+' } else { '-' };
    println!("{a}^m {op} {b}^n = {k}, exponents up to {cap}: {} solutions", r.count);
    for (m, n) in &r.solutions {
        println!("  (m, n) = ({m}, {n})");
    }
    Ok(())
}

fn survey(args: &SurveyArgs) -> Result<(), Failure> {
    let mut cfg = SurveyConfig::new(args.min, args.max, &args.out);
    if let Some(cp) = &args.checkpoint {
        cfg.checkpoint_path = cp.clone();
    }
    cfg.cap_mode = if args.cap.rigorous {
        CapMode::Rigorous
    } else {
        CapMode::Fixed(args.cap.cap.unwrap_or(100))
    };
    cfg.workers = args.workers;
    cfg.chunk_size = args.chunk_size;
    cfg.stop_after = args.stop_after;
    cfg.dedupe_ab_swap = !args.no_dedupe;
    cfg.certificates = !args.no_certificates;
    cfg.volume_limit = args.volume_limit;

    let out = run_survey(&cfg)?;
    let s = &out.summary;
    if args.json {
        print_json(&json!({
            "total": out.total,
            "started_at": out.started_at,
            "processed": out.processed,
            "complete": out.complete,
            "summary": s,
        }));
    } else {
        println!(
            "{} of {} triples recorded ({} this run, from index {})",
            s.records, out.total, out.processed, out.started_at
        );
        if !out.complete {
            println!("incomplete; rerun with the same flags to resume");
        }
        for (n, count) in &s.histogram {
            println!("  N = {n}: {count}");
        }
        println!("max N = {}", s.max_n);
        for t in &s.three_or_more {
            println!("  N >= 3 at ({}, {}, {})", t.0, t.1, t.2);
        }
        for t in &s.four_or_more {
            println!("  N >= 4 at ({}, {}, {})", t.0, t.1, t.2);
        }
        for (t, kind) in &s.certificate_failures {
            println!("  certificate {kind:?} failed at ({}, {}, {})", t.0, t.1, t.2);
        }
    }
    if s.certificate_failures.is_empty() {
        Ok(())
    } else {
        Err(ChecksFailed.into())
    }
}
