use std::process::Command;

use serde_json::Value;

use franel::certificates::{certificate, multiplier_parts, MultiplierParts};
use franel::cli::sweep::{execute, OutputFormat, SweepConfig};
use franel::cli::{run_command, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use franel::{Rational, TheoremKind};

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<&str> = std::iter::once("franel")
        .chain(args.iter().copied())
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_command(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn integral_record() {
    let (code, out, _) = run(&["integral", "--k", "1", "--tuple", "2,3"]);
    assert_eq!(code, EXIT_OK);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["value"], "1/72");
    assert_eq!(rec["k"], 1);
    assert_eq!(rec["tuple"], serde_json::json!([2, 3]));
    assert!(rec.get("elapsed_ms").is_none());
}

#[test]
fn integral_timing_is_opt_in() {
    let (_, out, _) = run(&["integral", "--k", "1", "--tuple", "1,1", "--timing"]);
    assert!(json_lines(&out)[0]["elapsed_ms"].is_number());
}

#[test]
fn certificate_record() {
    let (code, out, _) = run(&["certificate", "--theorem", "mcintosh", "--tuple", "1,1,1,1"]);
    assert_eq!(code, EXIT_OK);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["integral"], "1/80");
    assert_eq!(rec["multiplier"], "240");
    assert_eq!(rec["product"], "3");
    assert_eq!(rec["is_integer"], true);

    let (code, out, _) = run(&[
        "certificate",
        "--theorem",
        "higher",
        "--k",
        "1",
        "--n",
        "1",
        "--tuple",
        "1,1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json_lines(&out)[0]["product"], "18");
}

#[test]
fn certificate_usage_errors() {
    let (code, out, err) = run(&["certificate", "--theorem", "mcintosh", "--tuple", "1,2,3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert_eq!(err.trim().lines().count(), 1);

    let (code, _, _) = run(&["certificate", "--theorem", "general", "--tuple", "1,2,3,4"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["integral", "--k", "0", "--tuple", "1,2"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["integral", "--k", "1", "--tuple", "1,x"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn sweep_summary() {
    let (code, out, _) = run(&[
        "sweep",
        "--theorem",
        "mcintosh",
        "--max",
        "5",
        "--len",
        "4",
        "--quiet",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    let summary = lines.last().unwrap();
    assert_eq!(summary["checked"], 625);
    assert_eq!(summary["evaluated"], 70);
    assert_eq!(summary["violations"], 0);
    assert_eq!(lines.len(), 71);
    let multiplicity: u64 = lines[..70]
        .iter()
        .map(|r| r["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(multiplicity, 625);
}

#[test]
fn sweep_no_dedup_checks_every_ordering() {
    let (code, out, _) = run(&[
        "sweep",
        "--theorem",
        "mcintosh",
        "--max",
        "3",
        "--len",
        "4",
        "--no-dedup",
        "--quiet",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 82);
    assert_eq!(lines.last().unwrap()["checked"], 81);
}

#[test]
fn sweep_output_is_independent_of_parallelism() {
    let base = [
        "sweep",
        "--theorem",
        "general",
        "--k",
        "3",
        "--max",
        "3",
        "--len",
        "6",
        "--quiet",
    ];
    let outputs: Vec<String> = ["1", "2", "7"]
        .iter()
        .map(|p| {
            let mut args = base.to_vec();
            args.extend(["--parallelism", p]);
            let (code, out, _) = run(&args);
            assert_eq!(code, EXIT_OK);
            out
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn sampled_sweep_is_seeded() {
    let args = |seed: &'static str| {
        run(&[
            "sweep",
            "--theorem",
            "mcintosh",
            "--max",
            "30",
            "--len",
            "4",
            "--sample",
            "40",
            "--seed",
            seed,
            "--quiet",
        ])
        .1
    };
    assert_eq!(args("9"), args("9"));
    assert_ne!(args("9"), args("10"));
    let summary = json_lines(&args("9")).pop().unwrap();
    assert_eq!(summary["checked"], 40);
}

#[test]
fn sweep_csv() {
    let (code, out, _) = run(&[
        "sweep",
        "--theorem",
        "mcintosh",
        "--max",
        "2",
        "--len",
        "4",
        "--csv",
        "--quiet",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("tuple,multiplicity,"));
    assert_eq!(lines.len(), 1 + 5 + 1);
    assert!(lines[1].starts_with("1;1;1;1,1,1,240,1/80,3,true"));
    assert_eq!(
        *lines.last().unwrap(),
        "# checked=16 evaluated=5 violations=0"
    );
}

#[test]
fn sweep_progress_goes_to_stderr() {
    let (_, out, err) = run(&["sweep", "--theorem", "mcintosh", "--max", "4", "--len", "4"]);
    assert!(!err.is_empty());
    assert!(out.lines().all(|l| l.starts_with('{')));
}

#[test]
fn corrupted_multiplier_is_reported_as_violation() {
    let kind = TheoremKind::McIntosh4;
    let mut config = SweepConfig::new(kind, 4);
    config.parallelism = 2;
    let corrupt = move |t: &[u64]| {
        let honest = certificate(kind, t)?;
        let parts = multiplier_parts(kind, t)?;
        let seven = Rational::from_integer(7.into());
        Ok(honest.with_multiplier(MultiplierParts {
            constant: parts.constant,
            gcd_part: parts.gcd_part / seven,
        }))
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(
        execute(&config, &corrupt, &mut out, &mut err),
        EXIT_VIOLATION
    );
    let summary = json_lines(&String::from_utf8(out).unwrap()).pop().unwrap();
    assert!(summary["violations"].as_u64().unwrap() > 0);
    assert!(!summary["violating_tuples"].as_array().unwrap().is_empty());

    let honest = move |t: &[u64]| certificate(kind, t);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    config.format = OutputFormat::Csv;
    assert_eq!(execute(&config, &honest, &mut out, &mut err), EXIT_OK);
}

#[test]
fn lattice_records() {
    let (code, out, _) = run(&[
        "lattice", "--tuple", "1,1", "--exp", "3", "--bounds", "1,2,20",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["truncated"], "-2");
    assert_eq!(lines[1]["truncated"], "-65/32");
    assert_eq!(lines[2]["coefficient"], "-2/945");
    assert_eq!(lines[2]["pi_power"], 6);
    assert!(lines[2]["float_discrepancy"].as_f64().unwrap() < 1e-6);

    let (code, _, _) = run(&["lattice", "--tuple", "1,1", "--exp", "2", "--bounds", "5"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn bernoulli_queries() {
    let (_, out, _) = run(&["bernoulli", "--numbers", "4"]);
    assert!(out.contains("-1/30"));
    let (_, out, _) = run(&["bernoulli", "--denominator", "4"]);
    assert!(out.contains("30"));
    let (code, out, _) = run(&["bernoulli", "--dedekind", "1,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("1/18"));
    let (_, out, _) = run(&["bernoulli", "--higher-constants", "1,1"]);
    assert!(out.contains("15120"));
    let (code, _, _) = run(&["bernoulli", "--general-constant", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["bernoulli"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_franel");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["integral", "--k", "1", "--tuple", "2,3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout).trim(),
        r#"{"k":1,"tuple":[2,3],"value":"1/72"}"#
    );

    assert_eq!(
        status(&["sweep", "--theorem", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
