//! End-to-end tests of the `pqss` binary: exit codes, CSV schemas,
//! determinism, and config-file handling.

use std::path::Path;
use std::process::{Command, Output};

fn pqss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn csv_column(csv: &str, header: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let headers: Vec<&str> = lines.next().expect("header line").split(',').collect();
    let idx = headers
        .iter()
        .position(|h| *h == header)
        .unwrap_or_else(|| panic!("no column {header} in {headers:?}"));
    lines
        .map(|line| line.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn eval_constant_prints_ones() {
    let out = pqss(&[
        "eval", "--fn", "const1", "--n", "8", "--l", "1", "--alpha", "0.5", "--beta", "1",
        "--p", "0.95", "--q", "0.9", "--grid", "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x,S,f,abs_error\n"));
    for value in csv_column(&text, "S") {
        assert_eq!(value, 1.0);
    }
}

#[test]
fn eval_rejects_inverted_parameters_with_exit_2() {
    let out = pqss(&["eval", "--fn", "square", "--p", "0.8", "--q", "0.9", "--x", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0 < q <= p <= 1"), "{}", stderr(&out));

    let out = pqss(&[
        "eval", "--fn", "square", "--alpha", "2", "--beta", "1", "--x", "0.4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0 <= alpha <= beta"), "{}", stderr(&out));
}

#[test]
fn eval_rejects_unknown_function() {
    let out = pqss(&["eval", "--fn", "cube", "--x", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("built-ins"));
}

#[test]
fn eval_bernstein_schurer_mode_matches_zero_shift_output() {
    let common = [
        "--fn", "exp_neg", "--n", "6", "--l", "2", "--alpha", "0", "--beta", "0", "--p", "0.9",
        "--q", "0.8", "--grid", "9",
    ];
    let mut shifted = vec!["eval"];
    shifted.extend_from_slice(&common);
    let mut plain = shifted.clone();
    plain.extend_from_slice(&["--mode", "bernstein-schurer"]);
    let a = pqss(&shifted);
    let b = pqss(&plain);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    // Nonzero shifts are rejected in plain mode.
    let out = pqss(&[
        "eval", "--fn", "exp_neg", "--alpha", "0.5", "--beta", "1", "--x", "0.5", "--mode",
        "bernstein-schurer",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_square_matches_closed_form_second_moment() {
    let out = pqss(&[
        "eval", "--fn", "square", "--n", "50", "--l", "1", "--alpha", "0.5", "--beta", "1",
        "--p", "0.99", "--q", "0.98", "--x", "0.4", "--precision", "15",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let printed = csv_column(&text, "S")[0];
    let pq = pqss::PQPair::new(0.99, 0.98).unwrap();
    let config = pqss::OperatorConfig::new(50, 1, 0.5, 1.0, pq).unwrap();
    let closed = pqss::ss_moment_closed(2, &config, 0.4).unwrap();
    assert!(
        (printed - closed).abs() <= 1e-12,
        "printed {printed} vs closed {closed}"
    );
}

#[test]
fn moments_oracle_columns_agree() {
    let out = pqss(&[
        "moments", "--n", "5", "--l", "1", "--alpha", "0.5", "--beta", "1", "--p", "0.95",
        "--q", "0.9", "--grid", "11", "--oracle", "--precision", "15",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with(
        "x,raw0,raw1,raw2,central0,central1,central2,oracle_raw0,oracle_raw1,oracle_raw2,oracle_central0,oracle_central1,oracle_central2,max_diff\n"
    ));
    for value in csv_column(&text, "raw0") {
        assert_eq!(value, 1.0);
    }
    for value in csv_column(&text, "max_diff") {
        assert!(value.abs() <= 1e-10);
    }
}

#[test]
fn moments_central1_vanishes_without_shifts() {
    let out = pqss(&[
        "moments", "--n", "6", "--l", "0", "--alpha", "0", "--beta", "0", "--p", "0.95", "--q",
        "0.9", "--grid", "5",
    ]);
    assert!(out.status.success());
    for value in csv_column(&stdout(&out), "central1") {
        assert_eq!(value, 0.0);
    }
}

#[test]
fn korovkin_default_header_and_e0_column() {
    let out = pqss(&["korovkin"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "n,p_n,q_n,bracket_n,err_e0,err_e1,err_e2"
    );
    assert_eq!(text.lines().count(), 6);
    for value in csv_column(&text, "err_e0") {
        assert!(value <= 1e-12);
    }
    // Unix line endings, no carriage returns.
    assert!(!text.contains('\r'));
}

#[test]
fn korovkin_rejects_invalid_sequence_with_exit_2() {
    // n = 1 makes q_1 = 0 under the defaults.
    let out = pqss(&["korovkin", "--n-values", "1,10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0 < q_n < p_n <= 1"), "{}", stderr(&out));
}

#[test]
fn korovkin_reports_io_failure_with_exit_3() {
    let out = pqss(&[
        "korovkin",
        "--n-values",
        "10,25",
        "--csv",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn korovkin_corpus_adds_columns() {
    let out = pqss(&["korovkin", "--n-values", "10,25", "--corpus", "sin_pi,exp_neg", "--grid", "41"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "n,p_n,q_n,bracket_n,err_e0,err_e1,err_e2,err_sin_pi,err_exp_neg"
    );
    let sin_errors = csv_column(&text, "err_sin_pi");
    assert!(sin_errors[0] > sin_errors[1]);
}

#[test]
fn korovkin_config_file_equals_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("experiment.json");
    std::fs::write(
        &config_path,
        r#"{
            "operator": { "n_values": [10, 25], "l": 1, "alpha": 0.5, "beta": 1.0 },
            "sequences": { "kind": "affine_reciprocal", "c_p": 0.5, "c_q": 1.0 },
            "corpus": ["sin_pi"],
            "grid_points": 41
        }"#,
    )
    .unwrap();
    let via_config = pqss(&["korovkin", "--config", config_path.to_str().unwrap()]);
    let via_flags = pqss(&[
        "korovkin", "--n-values", "10,25", "--l", "1", "--alpha", "0.5", "--beta", "1", "--corpus",
        "sin_pi", "--grid", "41",
    ]);
    assert!(via_config.status.success());
    assert_eq!(stdout(&via_config), stdout(&via_flags));
}

#[test]
fn config_conflicts_with_flags() {
    let out = pqss(&["korovkin", "--config", "x.json", "--grid", "41"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_is_exit_2_and_missing_file_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.json");
    std::fs::write(&config_path, "{ \"operator\": { \"n\": 5, \"n_values\": [5] } }").unwrap();
    let out = pqss(&["korovkin", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("mutually exclusive"));

    let out = pqss(&["korovkin", "--config", "/no/such/config.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn svg_output_is_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let svg_a = dir.path().join("a.svg");
    let svg_b = dir.path().join("b.svg");
    for path in [&svg_a, &svg_b] {
        let out = pqss(&[
            "korovkin",
            "--n-values",
            "10,25,50",
            "--grid",
            "41",
            "--csv",
            dir.path().join("out.csv").to_str().unwrap(),
            "--svg",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&svg_a).unwrap();
    let b = std::fs::read(&svg_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("<polyline"));
}

#[test]
fn bounds_csv_schema_and_sin_pi_thm32_slack() {
    let out = pqss(&[
        "bounds", "--n-values", "10,25", "--corpus", "sin_pi", "--grid", "41",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "n,fn,bound_kind,sup_error,sup_bound,min_slack"
    );
    // thm32 rows dominate the error; thm33 rows are reported but may carry
    // negative slack for shifted configurations.
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        if fields[2] == "thm32" {
            let slack: f64 = fields[5].parse().unwrap();
            assert!(slack >= 0.0, "{line}");
        }
    }
}

#[test]
fn bounds_rejects_nonpositive_constant() {
    let out = pqss(&["bounds", "--n-values", "10", "--constant", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("C > 0"));
}

#[test]
fn selftest_passes_quickly() {
    let started = std::time::Instant::now();
    let out = pqss(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for group in [
        "pq-identities",
        "partition-of-unity",
        "moment-equivalence",
        "reduction-chain",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with("PASS") && l.contains(group)),
            "missing PASS line for {group}: {text}"
        );
    }
    assert!(started.elapsed().as_secs() < 5);
}

#[test]
fn selftest_full_suite_passes() {
    let out = pqss(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flags_exit_2() {
    let out = pqss(&["korovkin", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_files_match_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let to_file = pqss(&["korovkin", "--n-values", "10,25", "--csv", path.to_str().unwrap()]);
    assert!(to_file.status.success());
    let on_stdout = pqss(&["korovkin", "--n-values", "10,25"]);
    assert_eq!(std::fs::read(&path).unwrap(), on_stdout.stdout);
    assert!(Path::new(&path).exists());
}
