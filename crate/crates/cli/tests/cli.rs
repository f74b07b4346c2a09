//! End-to-end tests of the binary: argument handling, exact output
//! schemas, exit codes, and byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degen-harmonics"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited normally")
}

#[test]
fn table_harmonic_values() {
    let doc = stdout_json(&run(&["table", "harmonic", "--n", "1..4"]));
    assert_eq!(doc["family"], "harmonic");
    let values: Vec<&str> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "3/2", "11/6", "25/12"]);
}

#[test]
fn table_degenerate_harmonic_symbolic_and_evaluated() {
    let doc = stdout_json(&run(&["table", "degen-harmonic", "--n", "2..2"]));
    assert_eq!(doc["lambda"], "symbolic");
    assert_eq!(doc["rows"][0]["value"], serde_json::json!(["3/2", "-1/2"]));

    let doc = stdout_json(&run(&[
        "table",
        "degen-harmonic",
        "--n",
        "2..2",
        "--lambda",
        "1/2",
    ]));
    assert_eq!(doc["lambda"], "1/2");
    assert_eq!(doc["rows"][0]["value"], "5/4");
}

#[test]
fn table_hyper_zero_row_in_csv() {
    let output = run(&["table", "hyper", "--n", "0..0", "--r", "1..3", "--format", "csv"]);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    assert_eq!(text, "n,r,value\n0,1,\"0\"\n0,2,\"0\"\n0,3,\"0\"\n");
}

#[test]
fn table_stirling_and_correction_polynomials() {
    let doc = stdout_json(&run(&["table", "stirling1", "--n", "4..4", "--k", "1..4"]));
    let values: Vec<&str> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["-6", "11", "-6", "1"]);

    let doc = stdout_json(&run(&["table", "qpoly", "--n", "1..2", "--r", "1..1"]));
    assert_eq!(doc["rows"][0]["value"], serde_json::json!(["-1"]));
    assert_eq!(doc["rows"][1]["value"], serde_json::json!(["-3/2", "1/2"]));
}

#[test]
fn table_usage_errors() {
    // missing required range
    assert_eq!(exit_code(&run(&["table", "harmonic"])), 2);
    assert_eq!(exit_code(&run(&["table", "hyper", "--n", "1..3"])), 2);
    // λ on a non-degenerate family
    assert_eq!(
        exit_code(&run(&["table", "hyper", "--n", "1..3", "--r", "1..1", "--lambda", "1/2"])),
        2
    );
    // the undefined corner (n, r) = (0, 0)
    assert_eq!(
        exit_code(&run(&["table", "hyper", "--n", "0..3", "--r", "0..1"])),
        2
    );
    // qpoly needs n, r ≥ 1
    assert_eq!(
        exit_code(&run(&["table", "qpoly", "--n", "0..2", "--r", "1..1"])),
        2
    );
    // malformed and reversed ranges
    assert_eq!(exit_code(&run(&["table", "harmonic", "--n", "4"])), 2);
    assert_eq!(exit_code(&run(&["table", "harmonic", "--n", "4..1"])), 2);
    // unknown family
    assert_eq!(exit_code(&run(&["table", "fibonacci", "--n", "1..2"])), 2);
}

#[test]
fn verify_passes_and_reports() {
    let output = run(&["verify", "theorem3", "--n", "1..6", "--k", "1..6"]);
    assert_eq!(exit_code(&output), 0);
    let reports: Value = serde_json::from_slice(&output.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2); // polynomial form + evaluated form
    assert_eq!(reports[0]["identity"], "theorem3");
    assert_eq!(reports[0]["cases"], 36);
    assert_eq!(reports[0]["failures"], serde_json::json!([]));
    assert_eq!(reports[1]["identity"], "theorem3-evaluated");
}

#[test]
fn verify_domain_violations_are_usage_errors() {
    let output = run(&["verify", "theorem2", "--n", "0..0"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("n ≥ 1"), "stderr: {stderr}");

    assert_eq!(exit_code(&run(&["verify", "rearrangement", "--r", "1..3"])), 2);
    assert_eq!(exit_code(&run(&["verify", "gf", "--r", "0..2"])), 2);
    assert_eq!(exit_code(&run(&["verify", "all", "--terms", "0"])), 2);
    // unknown identity name
    assert_eq!(exit_code(&run(&["verify", "theorem9"])), 2);
}

#[test]
fn verify_all_passes_on_small_ranges() {
    let output = run(&[
        "verify", "all", "--n", "1..3", "--k", "1..3", "--r", "1..3", "--m", "2..2",
        "--order", "8", "--terms", "6",
    ]);
    assert_eq!(exit_code(&output), 0);
    let reports: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 7);
    for report in reports.as_array().unwrap() {
        assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn injected_fault_reports_the_corrupted_case() {
    let output = run(&[
        "verify", "theorem2", "--n", "1..2", "--k", "1..2", "--r", "1..2",
        "--inject-fault",
    ]);
    assert_eq!(exit_code(&output), 1);
    let reports: Value = serde_json::from_slice(&output.stdout).unwrap();
    let failures = reports[0]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["params"]["n"], "1");
    assert_eq!(failures[0]["params"]["k"], "1");
    assert_eq!(failures[0]["params"]["r"], "1");
    assert_ne!(failures[0]["lhs"], failures[0]["rhs"]);
}

#[test]
fn zeta_examples() {
    let doc = stdout_json(&run(&[
        "zeta", "--m", "2", "--lambda", "1", "--terms", "100", "--digits", "4",
    ]));
    assert_eq!(doc["partial_sum"], "5/4");
    assert_eq!(doc["decimal"], "1.2500");
    assert_eq!(doc["terms"], 100);

    let doc = stdout_json(&run(&["zeta", "--m", "2", "--lambda", "0", "--terms", "1"]));
    assert_eq!(doc["partial_sum"], "1");
    assert_eq!(doc["decimal"], "1.000000");
    assert_eq!(doc["last_term"], "1");

    // offset form: Σ_{n<2} 1/(n+1/2)² = 4 + 4/9
    let doc = stdout_json(&run(&[
        "zeta", "--m", "2", "--delta", "1/2", "--terms", "2",
    ]));
    assert_eq!(doc["partial_sum"], "40/9");
}

#[test]
fn zeta_usage_errors() {
    assert_eq!(exit_code(&run(&["zeta", "--m", "1"])), 2);
    assert_eq!(exit_code(&run(&["zeta", "--m", "2", "--terms", "0"])), 2);
    assert_eq!(exit_code(&run(&["zeta", "--m", "2", "--digits", "0"])), 2);
    assert_eq!(exit_code(&run(&["zeta", "--m", "2", "--delta", "0"])), 2);
    // a negative δ must parse as a value and be rejected by the domain
    // check, not fall over as an unrecognized flag
    let output = run(&["zeta", "--m", "2", "--delta", "-1"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("positive"), "stderr: {stderr}");
}

#[test]
fn negative_lambda_values_parse_everywhere() {
    // H_{2,λ} at λ = −1/3 is 3/2 + 1/6 = 5/3
    let doc = stdout_json(&run(&[
        "table", "degen-harmonic", "--n", "2..2", "--lambda", "-1/3",
    ]));
    assert_eq!(doc["rows"][0]["value"], "5/3");

    let output = run(&[
        "verify", "theorem3", "--n", "1..4", "--k", "1..4", "--lambda", "-2/7",
    ]);
    assert_eq!(exit_code(&output), 0);

    let doc = stdout_json(&run(&["series", "--r", "1", "--order", "2", "--lambda", "-1"]));
    assert_eq!(doc["coeffs"], serde_json::json!(["0", "1", "2"]));

    let doc = stdout_json(&run(&[
        "zeta", "--m", "2", "--lambda", "-1/4", "--terms", "3",
    ]));
    // 1 + 1/4 + (1 + 1/4)/9 = 25/18
    assert_eq!(doc["partial_sum"], "25/18");
}

#[test]
fn series_examples_and_validation() {
    let doc = stdout_json(&run(&["series", "--r", "1", "--order", "3", "--lambda", "0"]));
    assert_eq!(doc["ring"], "rational");
    assert_eq!(doc["coeffs"], serde_json::json!(["0", "1", "3/2", "11/6"]));

    let doc = stdout_json(&run(&["series", "--r", "2", "--order", "2"]));
    assert_eq!(doc["ring"], "lambda-poly");
    assert_eq!(
        doc["coeffs"],
        serde_json::json!([[], ["1"], ["5/2", "-1/2"]])
    );

    // order 0 keeps the single constant coefficient, which is 0
    let doc = stdout_json(&run(&["series", "--r", "1", "--order", "0"]));
    assert_eq!(doc["coeffs"], serde_json::json!([[]]));

    assert_eq!(exit_code(&run(&["series", "--r", "0"])), 2);
    assert_eq!(exit_code(&run(&["series"])), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "theorem3", "--n", "1..4", "--k", "1..4"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(exit_code(&first), exit_code(&second));

    let args = ["table", "degen-hyper", "--n", "0..6", "--r", "1..3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_the_same_bytes_to_a_file() {
    let dir = std::env::temp_dir().join("degen-harmonics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let piped = run(&["table", "harmonic", "--n", "1..5"]);
    let to_file = run(&[
        "table", "harmonic", "--n", "1..5", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}
