//! Command-line front end.
//!
//! Every subcommand writes line-delimited JSON to standard output (sweeps can
//! switch to CSV). Rationals are serialized as `"num/den"` strings. Exit codes:
//! 0 on success, 2 on usage or domain errors, 3 when a sweep finds a
//! non-integer certificate.

mod records;
pub mod sweep;

use std::io::Write;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::arith::{format_rational, rational_to_f64};
use crate::bernoulli::{
    bernoulli_numbers, bernoulli_polynomial, dedekind_sum, general_constant_b, higher_constants,
};
use crate::certificates::{certificate, TheoremKind};
use crate::error::{Error, Result};
use crate::franel::{franel_integral, IntegralSpec};
use crate::lattice::convergence_report;

pub use records::{CertificateRecord, IntegralRecord, LatticeRecord, SweepSummary};
pub use sweep::{OutputFormat, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "franel",
    version,
    about = "Exact Franel integrals, integrality certificates and lattice sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value of ∫_0^1 ∏ B̃_k(a_i x) dx.
    Integral(IntegralArgs),
    /// Multiplier, integral and integrality verdict for one tuple.
    Certificate(CertificateArgs),
    /// Check every tuple in a range (or a seeded random sample).
    Sweep(SweepArgs),
    /// Truncated reciprocal lattice sums against their predicted limit.
    Lattice(LatticeArgs),
    /// Bernoulli numbers, polynomials, denominators and Dedekind sums.
    Bernoulli(BernoulliArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    Mcintosh,
    General,
    Higher,
}

#[derive(Debug, Args)]
struct IntegralArgs {
    /// Bernoulli index applied to every factor.
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = parse_tuple)]
    tuple: TupleArg,
    /// Add the elapsed wall time to the record.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Half the tuple length for `general`; Bernoulli index 2k+1 for `higher`.
    #[arg(long)]
    k: Option<usize>,
    /// Half the tuple length for `higher`.
    #[arg(long)]
    n: Option<usize>,
}

impl TheoremArgs {
    fn kind(&self) -> Result<TheoremKind> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::usage(format!("--theorem {:?} requires --{flag}", self.theorem)))
        };
        match self.theorem {
            Theorem::Mcintosh => Ok(TheoremKind::McIntosh4),
            Theorem::General => TheoremKind::general_even(need(self.k, "k")?),
            Theorem::Higher => TheoremKind::higher(need(self.k, "k")?, need(self.n, "n")?),
        }
    }
}

#[derive(Debug, Args)]
struct CertificateArgs {
    #[command(flatten)]
    theorem: TheoremArgs,
    #[arg(long, value_parser = parse_tuple)]
    tuple: TupleArg,
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    theorem: TheoremArgs,
    /// Largest tuple entry.
    #[arg(long)]
    max: u64,
    /// Tuple length; must match the theorem.
    #[arg(long)]
    len: usize,
    /// Check this many seeded random tuples instead of the full range.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available hardware concurrency).
    #[arg(long)]
    parallelism: Option<usize>,
    #[arg(long)]
    csv: bool,
    /// Check every ordering instead of one representative per multiset.
    #[arg(long)]
    no_dedup: bool,
    #[arg(long)]
    timing: bool,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    #[arg(long, value_parser = parse_tuple)]
    tuple: TupleArg,
    /// Odd exponent; also the Bernoulli index of the matching integral.
    #[arg(long)]
    exp: usize,
    #[arg(long, value_parser = parse_tuple)]
    bounds: TupleArg,
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("query")
        .required(true)
        .args(["numbers", "poly", "denominator", "dedekind", "general_constant", "higher_constants"])
))]
struct BernoulliArgs {
    /// B_0 through B_N.
    #[arg(long, value_name = "N")]
    numbers: Option<usize>,
    /// Coefficients of B_n(x).
    #[arg(long, value_name = "n")]
    poly: Option<usize>,
    /// Denominator of B_n(x).
    #[arg(long, value_name = "n")]
    denominator: Option<usize>,
    /// Dedekind sum s(h, k).
    #[arg(long, value_name = "h,k", value_parser = parse_int_pair)]
    dedekind: Option<(i64, i64)>,
    /// Denominator of B_{n+1}(x) for even n.
    #[arg(long, value_name = "n")]
    general_constant: Option<usize>,
    /// The constants beta and B for index 2k+1 and 2n factors.
    #[arg(long, value_name = "k,n", value_parser = parse_int_pair)]
    higher_constants: Option<(i64, i64)>,
}

/// Comma-separated positive integers.
#[derive(Debug, Clone)]
struct TupleArg(Vec<u64>);

fn parse_tuple(s: &str) -> std::result::Result<TupleArg, String> {
    let values: std::result::Result<Vec<u64>, _> =
        s.split(',').map(|p| p.trim().parse::<u64>()).collect();
    match values {
        Ok(v) if !v.is_empty() && !v.contains(&0) => Ok(TupleArg(v)),
        _ => Err(format!(
            "expected positive integers separated by commas, got {s:?}"
        )),
    }
}

fn parse_int_pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let err = || format!("expected two integers `a,b`, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(err)?;
    Ok((
        a.trim().parse().map_err(|_| err())?,
        b.trim().parse().map_err(|_| err())?,
    ))
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Core(_) => EXIT_USAGE,
            CommandError::Io(_) => EXIT_IO,
        }
    }
}

impl From<serde_json::Error> for CommandError {
    fn from(e: serde_json::Error) -> Self {
        CommandError::Io(e.into())
    }
}

fn emit<T: serde::Serialize>(
    out: &mut dyn Write,
    value: &T,
) -> std::result::Result<(), CommandError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn elapsed_ms(start: Instant, enabled: bool) -> Option<f64> {
    enabled.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn dispatch(
    command: Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, CommandError> {
    match command {
        Command::Integral(args) => {
            let start = Instant::now();
            let spec = IntegralSpec::new(args.k, args.tuple.0.clone())?;
            let value = franel_integral(&spec);
            emit(
                out,
                &records::IntegralRecord {
                    k: args.k,
                    tuple: args.tuple.0,
                    value: format_rational(&value),
                    elapsed_ms: elapsed_ms(start, args.timing),
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Certificate(args) => {
            let start = Instant::now();
            let kind = args.theorem.kind()?;
            let report = certificate(kind, &args.tuple.0)?;
            let mut record = CertificateRecord::from_report(&report, None);
            record.elapsed_ms = elapsed_ms(start, args.timing);
            emit(out, &record)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let kind = args.theorem.kind()?;
            let config = SweepConfig {
                kind,
                max_entry: args.max,
                tuple_length: args.len,
                sample: args.sample,
                seed: args.seed,
                parallelism: args.parallelism.unwrap_or_else(default_parallelism),
                dedup: !args.no_dedup,
                format: if args.csv {
                    OutputFormat::Csv
                } else {
                    OutputFormat::Json
                },
                timing: args.timing,
                progress: !args.quiet,
            };
            let summary = sweep::run(&config, &|t: &[u64]| certificate(kind, t), out, err)?;
            Ok(if summary.violations > 0 {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
        Command::Lattice(args) => {
            let spec = IntegralSpec::new(args.exp, args.tuple.0.clone())?;
            if args.exp % 2 == 0 {
                return Err(Error::domain(format!("--exp must be odd, got {}", args.exp)).into());
            }
            for r in convergence_report(&spec, &args.bounds.0)? {
                emit(
                    out,
                    &LatticeRecord {
                        tuple: args.tuple.0.clone(),
                        exponent: args.exp,
                        bound: r.bound,
                        truncated: format_rational(&r.truncated),
                        truncated_approx: rational_to_f64(&r.truncated),
                        coefficient: format_rational(&r.predicted_coefficient),
                        pi_power: r.pi_power,
                        predicted: r.predicted_value(),
                        float_discrepancy: r.float_discrepancy,
                    },
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Bernoulli(args) => {
            bernoulli_command(&args, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn bernoulli_command(
    args: &BernoulliArgs,
    out: &mut dyn Write,
) -> std::result::Result<(), CommandError> {
    use serde_json::json;
    let strings = |v: &[crate::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    let value = if let Some(n) = args.numbers {
        json!({ "numbers": strings(&bernoulli_numbers(n)) })
    } else if let Some(n) = args.poly {
        let p = bernoulli_polynomial(n);
        json!({ "n": n, "coefficients": strings(p.coeffs()), "polynomial": p.to_string() })
    } else if let Some(n) = args.denominator {
        json!({ "n": n, "denominator": bernoulli_polynomial(n).denominator().to_string() })
    } else if let Some((h, k)) = args.dedekind {
        let k = u64::try_from(k).map_err(|_| Error::domain("Dedekind sum needs k >= 1"))?;
        json!({ "h": h, "k": k, "value": format_rational(&dedekind_sum(h, k)?) })
    } else if let Some(n) = args.general_constant {
        json!({ "n": n, "constant": general_constant_b(n)?.to_string() })
    } else if let Some((k, n)) = args.higher_constants {
        let to_usize =
            |v: i64| usize::try_from(v).map_err(|_| Error::domain("k and n must be positive"));
        let c = higher_constants(to_usize(k)?, to_usize(n)?)?;
        json!({ "k": k, "n": n, "beta": c.beta.to_string(), "B": c.big_b.to_string() })
    } else {
        return Err(Error::usage("no query given").into());
    };
    emit(out, &value)
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["franel"];
        argv.extend_from_slice(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_command(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!(parse_tuple("3,1, 1,1").unwrap().0, vec![3, 1, 1, 1]);
        assert!(parse_tuple("3,,1").is_err());
        assert!(parse_tuple("3,0").is_err());
        assert!(parse_tuple("-1,2").is_err());
        assert!(parse_tuple("a").is_err());
    }

    #[test]
    fn usage_errors_are_one_line() {
        for args in [
            &["integral", "--k", "1", "--tuple", "1,x"][..],
            &["certificate", "--theorem", "mcintosh", "--tuple", "1,1,1"],
            &["certificate", "--theorem", "general", "--tuple", "1,1"],
            &[
                "certificate",
                "--theorem",
                "higher",
                "--k",
                "0",
                "--n",
                "1",
                "--tuple",
                "1,1",
            ],
            &["sweep", "--theorem", "mcintosh", "--max", "3", "--len", "5"],
            &["bernoulli"],
            &["frobnicate"],
        ] {
            let (code, out, err) = run(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty());
            assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("integral"));
    }
}
