//! Binary-level checks: exit codes, output formats, determinism, --out.

use std::process::{Command, Output};

use powerrep::conjecture::GridReportDoc;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powerrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn verify_default_grid_exits_clean() {
    // defaults are x in 1..50, n in 1..12
    let output = run(&["verify"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("cells checked: 600"));
    assert!(text.contains("all identities agree"));
}

#[test]
fn verify_rejects_nonpositive_range_with_usage_error() {
    let output = run(&["verify", "--x", "0..3"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("invalid range"));
}

#[test]
fn verify_rejects_malformed_range() {
    let output = run(&["verify", "--x", "definitely-not-a-range"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let output = run(&["prove-everything"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_single_cell_json() {
    let output = run(&["verify", "--x", "5..5", "--n", "7..7", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let cells = doc["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["power"], "78125");
    assert_eq!(cells[0]["mod2"], "78125");
    assert_eq!(cells[0]["agree"], true);
}

#[test]
fn verify_sampling_is_deterministic_per_seed() {
    let args = [
        "verify", "--x", "1..40", "--n", "1..9", "--sample", "60", "--seed", "7",
        "--format", "json",
    ];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second);
}

#[test]
fn decompose_mod3_shows_tail_for_fourth_powers() {
    let output = run(&["decompose", "7", "4", "--identity", "mod3"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("tail"));
    assert!(text.contains("7 + 2352 + 42 = 2401"), "got: {text}");
}

#[test]
fn decompose_rejects_zero_base() {
    let output = run(&["decompose", "0", "7"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn coeffs_rejects_zero_s() {
    let output = run(&["coeffs", "--s", "0..5"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn fermat_rejects_oversized_prime_bound() {
    let output = run(&["fermat", "--p-max", "5000"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn conjecture_json_roundtrips_byte_identically() {
    let output = run(&[
        "conjecture", "--x", "1..6", "--n", "1..7", "--format", "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let doc = GridReportDoc::from_json(&text).unwrap();
    assert_eq!(doc.to_json_string(), text);
    assert_eq!(doc.summary.total, 42);
    assert_eq!(doc.summary.mismatch, 0);
}

#[test]
fn conjecture_csv_has_one_row_per_cell() {
    let output = run(&[
        "conjecture", "--x", "1..5", "--n", "3..4", "--format", "csv",
    ]);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,n,lhs,rhs,residual,tail,verdict");
    assert_eq!(lines.len(), 1 + 10);
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",MATCH")));
    assert!(!text.contains('\r'));
}

#[test]
fn conjecture_backends_emit_identical_cells() {
    let naive = stdout(&run(&[
        "conjecture", "--x", "1..8", "--n", "1..8", "--format", "csv", "--backend", "naive",
    ]));
    let table = stdout(&run(&[
        "conjecture", "--x", "1..8", "--n", "1..8", "--format", "csv", "--backend", "table",
    ]));
    assert_eq!(naive, table);
}

#[test]
fn bench_emits_zero_counts_for_empty_limit() {
    let output = run(&["bench", "--limits", "0,10", "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("0,double,0,0,0,0,true"));
    assert!(text.contains("0,triple,0,0,0,0,true"));
}

#[test]
fn bench_agreement_on_tiny_triple_sum() {
    // s3[10] for e = 0 counts lattice points: 220
    let output = run(&["bench", "--e", "0", "--limits", "10", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["equal"], true);
    }
}

#[test]
fn out_flag_writes_file_and_keeps_stdout_empty() {
    let dir = std::env::temp_dir().join("powerrep-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.json");
    let output = run(&[
        "conjecture", "--x", "1..3", "--n", "1..3", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let doc = GridReportDoc::from_json(&written).unwrap();
    assert_eq!(doc.summary.total, 9);
    std::fs::remove_file(&path).ok();
}

#[test]
fn text_reports_are_byte_stable() {
    for args in [
        vec!["coeffs", "--s", "1..10"],
        vec!["fermat", "--p-max", "12", "--x", "1..15"],
        vec!["bench", "--limits", "5,10"],
    ] {
        let first = stdout(&run(&args));
        let second = stdout(&run(&args));
        assert_eq!(first, second, "args: {args:?}");
        assert!(!first.is_empty());
    }
}
