//! Exhaustive and sampled integrality sweeps.
//!
//! Workers evaluate certificates in parallel, chunk by chunk; each chunk is
//! written in lexicographic tuple order before the next one starts, so the
//! output does not depend on the worker count.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::records::{CertificateRecord, SweepSummary};
use super::{emit, CommandError, EXIT_OK, EXIT_VIOLATION};
use crate::certificates::{displayed_constant_check, CertificateReport, TheoremKind};
use crate::error::{Error, Result};

const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub kind: TheoremKind,
    pub max_entry: u64,
    pub tuple_length: usize,
    /// Random sample size; `None` sweeps the whole range.
    pub sample: Option<usize>,
    pub seed: u64,
    pub parallelism: usize,
    /// One sorted representative per multiset.
    pub dedup: bool,
    pub format: OutputFormat,
    pub timing: bool,
    pub progress: bool,
}

impl SweepConfig {
    pub fn new(kind: TheoremKind, max_entry: u64) -> Self {
        Self {
            kind,
            max_entry,
            tuple_length: kind.tuple_len(),
            sample: None,
            seed: 0,
            parallelism: 1,
            dedup: true,
            format: OutputFormat::Json,
            timing: false,
            progress: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tuple_length != self.kind.tuple_len() {
            return Err(Error::usage(format!(
                "{} needs --len {}, got {}",
                self.kind,
                self.kind.tuple_len(),
                self.tuple_length
            )));
        }
        if self.max_entry == 0 {
            return Err(Error::usage("--max must be positive"));
        }
        if self.parallelism == 0 {
            return Err(Error::usage("--parallelism must be positive"));
        }
        if self.sample == Some(0) {
            return Err(Error::usage("--sample must be positive"));
        }
        Ok(())
    }
}

/// A tuple to evaluate and how many tuples of the sweep it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepItem {
    pub tuple: Vec<u64>,
    pub multiplicity: u64,
}

/// Number of distinct orderings of a sorted tuple.
fn orderings(sorted: &[u64]) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    let mut total = fact(sorted.len());
    for (_, group) in &sorted.iter().chunk_by(|v| **v) {
        total /= fact(group.count());
    }
    total
}

/// Tuples of the sweep in lexicographic order.
pub fn enumerate(config: &SweepConfig) -> Result<Vec<SweepItem>> {
    config.validate()?;
    let len = config.tuple_length;
    let range = 1..=config.max_entry;
    let items = match (config.sample, config.dedup) {
        (None, true) => range
            .combinations_with_replacement(len)
            .map(|t| SweepItem {
                multiplicity: orderings(&t),
                tuple: t,
            })
            .collect(),
        (None, false) => itertools::repeat_n(range, len)
            .multi_cartesian_product()
            .map(|t| SweepItem {
                tuple: t,
                multiplicity: 1,
            })
            .collect(),
        (Some(count), dedup) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
            for _ in 0..count {
                let mut t: Vec<u64> = (0..len)
                    .map(|_| rng.gen_range(1..=config.max_entry))
                    .collect();
                if dedup {
                    t.sort_unstable();
                }
                *counts.entry(t).or_default() += 1;
            }
            let mut items = Vec::new();
            for (tuple, n) in counts {
                if dedup {
                    items.push(SweepItem {
                        tuple,
                        multiplicity: n,
                    });
                } else {
                    items.extend((0..n).map(|_| SweepItem {
                        tuple: tuple.clone(),
                        multiplicity: 1,
                    }));
                }
            }
            items
        }
    };
    Ok(items)
}

/// Runs a sweep with the given certificate function and returns the exit code
/// (errors are reported on `err`).
///
/// `certify` is a parameter so tests can substitute a deliberately wrong
/// multiplier and observe the violation path.
pub fn execute(
    config: &SweepConfig,
    certify: &(dyn Fn(&[u64]) -> Result<CertificateReport> + Sync),
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match run(config, certify, out, err) {
        Ok(summary) if summary.violations > 0 => EXIT_VIOLATION,
        Ok(_) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(
    config: &SweepConfig,
    certify: &(dyn Fn(&[u64]) -> Result<CertificateReport> + Sync),
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<SweepSummary, CommandError> {
    let items = enumerate(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::usage(format!("cannot start worker pool: {e}")))?;

    if config.format == OutputFormat::Csv {
        writeln!(out, "{}", CertificateRecord::CSV_HEADER)?;
    }
    let mut summary = SweepSummary {
        theorem: config.kind.to_string(),
        checked: 0,
        evaluated: 0,
        violations: 0,
        violating_tuples: Vec::new(),
        constant_4032_failures: None,
    };
    let mut done = 0usize;
    for chunk in items.chunks(CHUNK) {
        let results: Vec<Result<(CertificateReport, f64)>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|item| {
                    let start = Instant::now();
                    let report = certify(&item.tuple)?;
                    Ok((report, start.elapsed().as_secs_f64() * 1e3))
                })
                .collect()
        });
        for (item, result) in chunk.iter().zip(results) {
            let (report, ms) = result?;
            let multiplicity = config.dedup.then_some(item.multiplicity);
            let mut record = CertificateRecord::from_report(&report, multiplicity);
            if config.timing {
                record.elapsed_ms = Some(ms);
            }
            summary.checked += item.multiplicity;
            summary.evaluated += 1;
            if !report.is_integer {
                summary.violations += 1;
                summary.violating_tuples.push(item.tuple.clone());
            }
            if let Some(ok) = displayed_constant_check(&report) {
                let failures = summary.constant_4032_failures.get_or_insert(0);
                if !ok {
                    *failures += 1;
                }
            }
            match config.format {
                OutputFormat::Json => emit(out, &record)?,
                OutputFormat::Csv => writeln!(out, "{}", record.to_csv())?,
            }
        }
        done += chunk.len();
        if config.progress {
            writeln!(err, "progress: {done}/{}", items.len())?;
        }
    }
    match config.format {
        OutputFormat::Json => emit(out, &summary)?,
        OutputFormat::Csv => writeln!(
            out,
            "# checked={} evaluated={} violations={}",
            summary.checked, summary.evaluated, summary.violations
        )?,
    }
    if summary.constant_4032_failures.is_some_and(|f| f > 0) {
        writeln!(
            err,
            "note: constant 4032 fails on {} tuple(s); the formula constant 20160 is the one checked",
            summary.constant_4032_failures.unwrap()
        )?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_counts() {
        assert_eq!(orderings(&[1, 1, 1, 1]), 1);
        assert_eq!(orderings(&[1, 2, 3, 4]), 24);
        assert_eq!(orderings(&[1, 1, 2, 2]), 6);
        assert_eq!(orderings(&[1, 1, 1, 2]), 4);
    }

    #[test]
    fn dedup_covers_full_range() {
        let config = SweepConfig::new(TheoremKind::McIntosh4, 5);
        let items = enumerate(&config).unwrap();
        assert_eq!(items.len(), 70);
        assert_eq!(items.iter().map(|i| i.multiplicity).sum::<u64>(), 625);
        assert!(items.windows(2).all(|w| w[0].tuple < w[1].tuple));
    }

    #[test]
    fn no_dedup_is_cartesian() {
        let mut config = SweepConfig::new(TheoremKind::GeneralEven { k: 1 }, 4);
        config.dedup = false;
        let items = enumerate(&config).unwrap();
        assert_eq!(items.len(), 16);
        assert_eq!(items[1].tuple, vec![1, 2]);
    }

    #[test]
    fn sample_is_seeded() {
        let mut config = SweepConfig::new(TheoremKind::GeneralEven { k: 3 }, 6);
        config.sample = Some(50);
        config.seed = 7;
        let a = enumerate(&config).unwrap();
        let b = enumerate(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|i| i.multiplicity).sum::<u64>(), 50);
        config.seed = 8;
        assert_ne!(enumerate(&config).unwrap(), a);
    }

    #[test]
    fn length_mismatch_is_usage_error() {
        let mut config = SweepConfig::new(TheoremKind::McIntosh4, 3);
        config.tuple_length = 6;
        assert!(matches!(enumerate(&config), Err(Error::Usage(_))));
    }
}
