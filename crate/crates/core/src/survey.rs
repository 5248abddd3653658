//! Resumable scans over ranges of instances.
//!
//! Triples are visited in a fixed lexicographic order and processed in
//! chunks on a worker pool. After each chunk the records are appended to a
//! JSON-lines file in triple order, and then the checkpoint is replaced
//! atomically. A resumed run drops any records written after the last
//! checkpoint and continues from there, so the final file does not depend on
//! where a run was interrupted or how many workers it used.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::solution_bound;
use crate::enumerate::{count_solutions, enumerate_solutions, SieveConfig, DEFAULT_VOLUME_LIMIT};
use crate::error::{Error, Result};
use crate::lemma_lab::{certify_solutions, CertificateKind, Verdict};
use crate::model::{Instance, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapMode {
    /// The unconditional cap of each instance.
    Rigorous,
    Fixed(u64),
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub base_min: u64,
    pub base_max: u64,
    pub cap_mode: CapMode,
    /// Visit only `a < b`, since `(a, b, c)` and `(b, a, c)` have mirrored
    /// solution sets.
    pub dedupe_ab_swap: bool,
    pub workers: usize,
    pub checkpoint_path: PathBuf,
    pub output_path: PathBuf,
    /// Attach certificate verdicts to records with at least two solutions.
    pub certificates: bool,
    pub chunk_size: usize,
    /// Process at most this many triples in this run, then stop with a valid
    /// checkpoint.
    pub stop_after: Option<u64>,
    pub sieve: SieveConfig,
    /// Ceiling passed to the enumerator in rigorous mode.
    pub volume_limit: f64,
}

impl SurveyConfig {
    pub fn new(base_min: u64, base_max: u64, output_path: impl Into<PathBuf>) -> Self {
        let output_path = output_path.into();
        let mut checkpoint_path = output_path.clone().into_os_string();
        checkpoint_path.push(".checkpoint");
        SurveyConfig {
            base_min,
            base_max,
            cap_mode: CapMode::Fixed(100),
            dedupe_ab_swap: true,
            workers: 1,
            checkpoint_path: checkpoint_path.into(),
            output_path,
            certificates: true,
            chunk_size: 64,
            stop_after: None,
            sieve: SieveConfig::default(),
            volume_limit: DEFAULT_VOLUME_LIMIT,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.base_min < 2 || self.base_min > self.base_max {
            return Err(Error::InvalidArgument(format!(
                "base range [{}, {}] must satisfy 2 <= min <= max",
                self.base_min, self.base_max
            )));
        }
        if self.cap_mode == CapMode::Fixed(0) {
            return Err(Error::InvalidArgument("fixed cap must be at least 1".into()));
        }
        if self.workers == 0 || self.chunk_size == 0 {
            return Err(Error::InvalidArgument("workers and chunk size must be positive".into()));
        }
        Ok(())
    }

    /// SHA-256 over the settings that determine record content.
    pub fn digest(&self) -> String {
        #[derive(Serialize)]
        struct Key<'a> {
            base_min: u64,
            base_max: u64,
            cap_mode: &'a CapMode,
            dedupe_ab_swap: bool,
            certificates: bool,
            prime_cap: u64,
            prime_count: usize,
            base_power_moduli: bool,
        }
        let key = Key {
            base_min: self.base_min,
            base_max: self.base_max,
            cap_mode: &self.cap_mode,
            dedupe_ab_swap: self.dedupe_ab_swap,
            certificates: self.certificates,
            prime_cap: self.sieve.prime_cap,
            prime_count: self.sieve.prime_count,
            base_power_moduli: self.sieve.base_power_moduli,
        };
        let bytes = serde_json::to_vec(&key).expect("plain struct serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateVerdict {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub solutions: Vec<Solution>,
    pub cap_used: u64,
    pub rigorous: bool,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertificateVerdict>>,
}

impl SurveyRecord {
    pub fn triple(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    /// The record without its timing, for comparing runs.
    pub fn content(&self) -> SurveyRecord {
        SurveyRecord {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SurveySummary {
    pub records: u64,
    /// Number of records per solution count.
    pub histogram: BTreeMap<usize, u64>,
    pub max_n: usize,
    /// Triples with at least three solutions.
    pub three_or_more: Vec<(u64, u64, u64)>,
    /// Triples with four or more solutions. Never expected; always reported.
    pub four_or_more: Vec<(u64, u64, u64)>,
    pub certificate_failures: Vec<((u64, u64, u64), CertificateKind)>,
    pub rigorous_records: u64,
}

impl SurveySummary {
    pub fn from_records(records: &[SurveyRecord]) -> Self {
        let mut s = SurveySummary::default();
        for r in records {
            s.records += 1;
            *s.histogram.entry(r.n).or_default() += 1;
            s.max_n = s.max_n.max(r.n);
            if r.n >= 3 {
                s.three_or_more.push(r.triple());
            }
            if r.n >= 4 {
                s.four_or_more.push(r.triple());
            }
            if r.rigorous {
                s.rigorous_records += 1;
            }
            for c in r.certificates.iter().flatten() {
                if c.verdict == Verdict::Fail {
                    s.certificate_failures.push((r.triple(), c.kind));
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Checkpoint {
    pub config_digest: String,
    /// Index of the last triple whose record is in the output file.
    pub last_index: u64,
}

#[derive(Clone, Debug)]
pub struct SurveyOutcome {
    pub summary: SurveySummary,
    /// Total number of triples in the range.
    pub total: u64,
    /// Index of the first triple processed by this run.
    pub started_at: u64,
    pub processed: u64,
    pub complete: bool,
}

/// Pairwise coprime triples in the range, in lexicographic order.
pub fn survey_triples(cfg: &SurveyConfig) -> Vec<(u64, u64, u64)> {
    let r = cfg.base_min..=cfg.base_max;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            if (cfg.dedupe_ab_swap && b <= a) || a.gcd(&b) != 1 {
                continue;
            }
            for c in r.clone() {
                if a.gcd(&c) == 1 && b.gcd(&c) == 1 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Computes the record for one triple.
pub fn survey_record(triple: (u64, u64, u64), cfg: &SurveyConfig) -> Result<SurveyRecord> {
    let start = Instant::now();
    let inst = Instance::from_u64(triple.0, triple.1, triple.2)?;
    let bound = solution_bound(&inst).bound;
    let set = match cfg.cap_mode {
        CapMode::Fixed(cap) => enumerate_solutions(&inst, cap, &cfg.sieve)?,
        CapMode::Rigorous => count_solutions(&inst, &cfg.sieve, cfg.volume_limit)?.set,
    };
    let certificates = if cfg.certificates && set.len() >= 2 {
        let certs = certify_solutions(&inst, set.cap, &set.solutions)?;
        Some(
            certs
                .certificates
                .iter()
                .map(|c| CertificateVerdict {
                    kind: c.kind,
                    verdict: c.verdict,
                    failed: c.failed_clauses().map(|f| f.name.to_string()).collect(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(SurveyRecord {
        a: triple.0,
        b: triple.1,
        c: triple.2,
        n: set.len(),
        solutions: set.solutions,
        cap_used: set.cap,
        rigorous: set.cap >= bound,
        elapsed_ms: start.elapsed().as_millis() as u64,
        certificates,
    })
}

/// Runs or resumes the survey described by `cfg`.
pub fn run_survey(cfg: &SurveyConfig) -> Result<SurveyOutcome> {
    cfg.validate()?;
    let triples = survey_triples(cfg);
    let total = triples.len() as u64;
    let digest = cfg.digest();

    let started_at = match read_checkpoint(&cfg.checkpoint_path)? {
        Some(cp) => {
            if cp.config_digest != digest {
                return Err(Error::Checkpoint {
                    path: cfg.checkpoint_path.clone(),
                    reason: "written by a different survey configuration".into(),
                });
            }
            if cp.last_index >= total {
                return Err(Error::Checkpoint {
                    path: cfg.checkpoint_path.clone(),
                    reason: format!("last index {} is beyond the {total} triples", cp.last_index),
                });
            }
            truncate_records(&cfg.output_path, cp.last_index + 1, &cfg.checkpoint_path)?;
            cp.last_index + 1
        }
        None => {
            File::create(&cfg.output_path).map_err(|e| Error::io(&cfg.output_path, e))?;
            0
        }
    };

    let end = match cfg.stop_after {
        Some(n) => total.min(started_at.saturating_add(n)),
        None => total,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;

    let mut next = started_at;
    while next < end {
        let stop = end.min(next + cfg.chunk_size as u64);
        let chunk = &triples[next as usize..stop as usize];
        let records: Vec<SurveyRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&t| {
                    survey_record(t, cfg).map_err(|e| {
                        Error::Internal(format!("triple ({}, {}, {}): {e}", t.0, t.1, t.2))
                    })
                })
                .collect::<Result<_>>()
        })?;
        append_records(&cfg.output_path, &records)?;
        write_checkpoint(
            &cfg.checkpoint_path,
            &Checkpoint {
                config_digest: digest.clone(),
                last_index: stop - 1,
            },
        )?;
        next = stop;
    }

    let records = read_records(&cfg.output_path)?;
    Ok(SurveyOutcome {
        summary: SurveySummary::from_records(&records),
        total,
        started_at,
        processed: end - started_at,
        complete: end == total,
    })
}

fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    serde_json::from_str(&text).map(Some).map_err(|e| Error::Checkpoint {
        path: path.to_path_buf(),
        reason: format!("unreadable: {e}"),
    })
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let body = serde_json::to_vec(cp).expect("checkpoint serializes");
    {
        let mut f = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(&body).map_err(|e| Error::io(&tmp, e))?;
        f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn append_records(path: &Path, records: &[SurveyRecord]) -> Result<()> {
    let f = OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    for r in records {
        serde_json::to_writer(&mut w, r).expect("record serializes");
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    let f = w.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    f.sync_data().map_err(|e| Error::io(path, e))
}

/// Keeps the first `keep` lines of the output; fails if there are fewer.
fn truncate_records(path: &Path, keep: u64, checkpoint: &Path) -> Result<()> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::new(f);
    let mut offset = 0u64;
    let mut line = String::new();
    for i in 0..keep {
        line.clear();
        let n = reader.read_line(&mut line).map_err(|e| Error::io(path, e))?;
        if n == 0 || !line.ends_with('\n') {
            return Err(Error::Checkpoint {
                path: checkpoint.to_path_buf(),
                reason: format!("output holds only {i} complete records, checkpoint claims {keep}"),
            });
        }
        offset += n as u64;
    }
    let f = OpenOptions::new()
        .write(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    f.set_len(offset).map_err(|e| Error::io(path, e))
}

/// Parses every record in a JSON-lines output file.
pub fn read_records(path: &Path) -> Result<Vec<SurveyRecord>> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line).map_err(|e| {
            Error::InvalidArgument(format!("{}:{}: malformed record: {e}", path.display(), i + 1))
        })?;
        out.push(r);
    }
    Ok(out)
}
