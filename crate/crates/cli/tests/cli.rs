use std::process::{Command, Output};

use gammaprod_core::VerificationRecord;

fn gammaprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammaprod"))
        .args(args)
        .env_remove("GAMMAPROD_PREC")
        .output()
        .expect("failed to launch gammaprod")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_records(out: &Output) -> Vec<VerificationRecord> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

fn value_line<'a>(text: &'a str, label: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(label))
        .map(|rest| rest.trim_start_matches([' ', '=']).trim())
        .unwrap_or_else(|| panic!("no {label:?} line in {text:?}"))
}

#[test]
fn eval_half_is_sqrt_pi() {
    let out = gammaprod(&["eval", "1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        value_line(&text, "Γ(x)").starts_with("1.772453850905516027298167483341"),
        "{text}"
    );
}

#[test]
fn eval_one_is_exactly_one() {
    let out = gammaprod(&["eval", "1/1", "--digits", "30"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value_line(&text, "ln Γ(x)"), "0");
    let gamma: f64 = value_line(&text, "Γ(x)").parse().unwrap();
    assert_eq!(gamma, 1.0);
}

#[test]
fn eval_exit_codes() {
    assert_eq!(gammaprod(&["eval", "banana"]).status.code(), Some(2));
    assert_eq!(gammaprod(&["eval", "0"]).status.code(), Some(3));
    assert_eq!(gammaprod(&["eval", "-1/3"]).status.code(), Some(3));
    assert_eq!(gammaprod(&["eval", "1/0"]).status.code(), Some(3));
    assert_eq!(gammaprod(&["eval", "1/2", "--prec", "8"]).status.code(), Some(2));
}

#[test]
fn eval_huge_argument_reports_only_the_log() {
    let out = gammaprod(&["eval", "1000000000000000000000000000000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(value_line(&text, "ln Γ(x)").starts_with("68077552789821370520539743640497.3"));
    assert!(text.contains("exceeds"));
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gammaprod"))
        .args(["verify", "eq1", "--n-max", "3", "--format", "json"])
        .env("GAMMAPROD_PREC", "100")
        .output()
        .unwrap();
    assert!(json_records(&out).iter().all(|r| r.prec_bits == 100));
    let digits = gammaprod(&["verify", "eq1", "--n-max", "3", "--digits", "50", "--format", "json"]);
    assert!(json_records(&digits).iter().all(|r| r.prec_bits == 183));
}

#[test]
fn verify_theorem1_to_64() {
    let out = gammaprod(&["verify", "theorem1", "--n-max", "64", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let records = json_records(&out);
    assert_eq!(records.len(), 63);
    assert_eq!(records.first().unwrap().parameter, 2);
    assert!(records.iter().all(|r| r.pass && r.prec_bits == 256));
}

#[test]
fn verify_all_small_ranges_pass() {
    let out = gammaprod(&["verify", "all", "--n-max", "32", "--N", "32"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).trim_end().ends_with("0 failed"));
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(
        gammaprod(&["verify", "farey_product", "--N", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(gammaprod(&["verify", "no_such_identity"]).status.code(), Some(2));
    assert_eq!(gammaprod(&["verify", "eq1", "--n-max", "513"]).status.code(), Some(2));
    assert_eq!(gammaprod(&["verify", "eq1", "--prec", "32"]).status.code(), Some(2));
    assert_eq!(gammaprod(&["verify", "eq1", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn verify_exit_code_reflects_failures() {
    // At the minimum precision the tolerance is still met, so this passes;
    // the exit status must agree with the records either way.
    let out = gammaprod(&[
        "verify", "midpoint", "--n-max", "20", "--prec", "64", "--format", "json",
    ]);
    let all_pass = json_records(&out).iter().all(|r| r.pass);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
}

#[test]
fn csv_has_fixed_columns() {
    let out = gammaprod(&["verify", "sine_lcm", "--N", "6", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        [
            "identity_id",
            "parameter",
            "prec_bits",
            "lhs",
            "rhs",
            "abs_err",
            "rel_err",
            "pass",
            "elapsed_ms"
        ]
    );
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[0][0], "sine_lcm");
    assert_eq!(&rows[4][1], "6");
    assert_eq!(&rows[4][7], "true");
}

#[test]
fn json_output_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let out = gammaprod(&[
        "verify",
        "sine_cyclotomic",
        "--n-min",
        "10",
        "--n-max",
        "20",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<VerificationRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 11);
    for (line, rec) in text.lines().zip(&records) {
        assert_eq!(serde_json::to_string(rec).unwrap(), line);
    }
}

#[test]
fn job_count_does_not_change_results() {
    let run = |jobs: &str| {
        let out = gammaprod(&[
            "verify", "all", "--n-max", "24", "--N", "24", "--format", "json", "--jobs", jobs,
        ]);
        json_records(&out)
            .into_iter()
            .map(|mut r| {
                r.elapsed_ms = 0;
                r
            })
            .collect::<Vec<_>>()
    };
    let serial = run("1");
    assert!(!serial.is_empty());
    assert_eq!(run("4"), serial);
}

#[test]
fn phi_table() {
    let out = gammaprod(&["table", "phi", "--n-max", "12"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    assert_eq!(text.lines().last().unwrap(), "12\t4");
}

#[test]
fn mu_and_lambda_tables() {
    let mu = stdout(&gammaprod(&["table", "mu", "--n-max", "6", "--format", "csv"]));
    assert_eq!(mu, "n,mu\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n");
    let lambda = stdout(&gammaprod(&["table", "lambda", "--n-max", "8", "--format", "json"]));
    let rows: Vec<serde_json::Value> = lambda.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[5]["lambda"], "0");
    assert_eq!(rows[7]["n"], 8);
    assert_eq!(rows[7]["lambda"], "log 2 · 1");
    let ln2: f64 = rows[7]["value"].as_str().unwrap().parse().unwrap();
    assert!((ln2 - std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn cyclotomic_table() {
    let text = stdout(&gammaprod(&["table", "cyclotomic", "--n-max", "12"]));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[5], "6\tx^2 - x + 1");
    assert_eq!(rows[11], "12\tx^4 - x^2 + 1");
}

#[test]
fn farey_table() {
    let text = stdout(&gammaprod(&["table", "farey", "--N", "5"]));
    let fractions: Vec<&str> = text.lines().map(|l| l.rsplit('\t').next().unwrap()).collect();
    assert_eq!(
        fractions,
        ["1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5"]
    );
}

#[test]
fn table_usage_errors_exit_2() {
    assert_eq!(gammaprod(&["table", "phi"]).status.code(), Some(2));
    assert_eq!(gammaprod(&["table", "farey", "--N", "1"]).status.code(), Some(2));
    assert_eq!(
        gammaprod(&["table", "cyclotomic", "--n-max", "20000"]).status.code(),
        Some(2)
    );
    assert_eq!(gammaprod(&["table", "totient"]).status.code(), Some(2));
}
