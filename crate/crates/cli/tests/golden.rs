//! Runs the binary on the files in `tests/data` and compares the output with
//! `tests/golden`. Set `UPDATE_GOLDENS=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn chowstab(args: &[&str]) -> Run {
    let data = manifest().join("tests/data");
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => data.join(file).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_chowstab"))
        .args(&args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let run = chowstab(&full);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    serde_json::from_str(&run.stdout).unwrap()
}

fn check_golden(name: &str, actual: &str) {
    let path: PathBuf = manifest().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

const CASES: &[(&str, &[&str], i32)] = &[
    (
        "analyze_aligned",
        &["analyze", "--input", "@aligned_p2.json", "--certificate"],
        0,
    ),
    ("analyze_aligned_plain", &["analyze", "--input", "@aligned_p2.json"], 0),
    (
        "analyze_generic",
        &[
            "analyze",
            "--input",
            "@generic4_p2.json",
            "--oracle",
            "--oracle-bound",
            "2",
            "--oracle-samples",
            "4",
            "--seed",
            "7",
        ],
        0,
    ),
    ("analyze_malformed", &["analyze", "--input", "@malformed.json"], 2),
    ("analyze_mixed", &["analyze", "--input", "@mixed.json"], 3),
    ("relative_triangle", &["relative", "--input", "@triangle_p2.json"], 0),
    (
        "relative_line_point",
        &["relative", "--input", "@line_point_p2.json"],
        0,
    ),
    (
        "relative_collinear",
        &["relative", "--input", "@collinear_311_p2.json", "--certificate"],
        0,
    ),
    (
        "decompose_line_point",
        &["decompose", "--input", "@line_point_p2.json"],
        0,
    ),
    ("mu_unnormalized", &["mu", "--input", "@unnormalized.json"], 4),
    (
        "mu_normalized",
        &["mu", "--input", "@unnormalized.json", "--normalize"],
        0,
    ),
    (
        "chow_three_lines",
        &["chow-weight", "--input", "@three_skew_lines.json"],
        0,
    ),
    (
        "futaki_three_lines",
        &[
            "futaki",
            "--input",
            "@three_skew_lines.json",
            "--check-commutes",
            "@diagonal_generators.json",
        ],
        0,
    ),
    ("futaki_skew_planes", &["futaki", "--input", "@skew_planes.json"], 0),
];

#[test]
fn goldens() {
    for (name, args, code) in CASES {
        for format in ["text", "json"] {
            let mut full = args.to_vec();
            full.extend(["--format", format]);
            let run = chowstab(&full);
            assert_eq!(run.code, *code, "{name}: stderr {}", run.stderr);
            let shown = if *code == 0 { run.stdout } else { run.stderr };
            check_golden(&format!("{name}.{format}"), &shown);
        }
    }
}

#[test]
fn output_is_deterministic() {
    for (_, args, _) in CASES {
        let a = chowstab(args);
        let b = chowstab(args);
        assert_eq!((a.code, a.stdout, a.stderr), (b.code, b.stdout, b.stderr));
    }
}

#[test]
fn aligned_points_certificate() {
    let v = json(&["analyze", "--input", "@aligned_p2.json", "--certificate"]);
    assert_eq!(v["result"]["verdict"], "unstable");
    assert_eq!(v["result"]["certificate"]["mu"], "4");
    assert_eq!(v["checks"]["certificate_verified"], true);
}

#[test]
fn certificate_only_on_request() {
    let v = json(&["analyze", "--input", "@aligned_p2.json"]);
    assert_eq!(v["result"]["certificate"], Value::Null);
    assert!(v["checks"].get("certificate_verified").is_none());
}

#[test]
fn generic_points_stable() {
    let v = json(&["analyze", "--input", "@generic4_p2.json", "--oracle"]);
    assert_eq!(v["result"]["verdict"], "stable");
    assert_eq!(v["checks"]["oracle"]["agrees"], true);
}

#[test]
fn malformed_rational_reports_position() {
    let run = chowstab(&["analyze", "--input", "@malformed.json"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("\"1//2\" at byte 2"), "{}", run.stderr);
}

#[test]
fn missing_file_is_invalid_input() {
    assert_eq!(chowstab(&["analyze", "--input", "/nonexistent/doc.json"]).code, 2);
}

#[test]
fn relative_verdicts() {
    let v = json(&["relative", "--input", "@triangle_p2.json"]);
    assert_eq!(v["result"]["verdict"], "stable");
    assert_eq!(v["result"]["decomposition"]["components"].as_array().unwrap().len(), 3);

    let v = json(&["relative", "--input", "@line_point_p2.json"]);
    let parts = v["result"]["component_reports"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0]["members"], serde_json::json!([0, 1, 2]));
    assert_eq!(parts[1]["members"], serde_json::json!([3]));

    let v = json(&["relative", "--input", "@collinear_311_p2.json", "--certificate"]);
    assert_eq!(v["result"]["verdict"], "unstable");
    assert_eq!(v["checks"]["certificate_verified"], true);
}

#[test]
fn chow_weight_and_futaki() {
    let v = json(&["chow-weight", "--input", "@three_skew_lines.json"]);
    assert_eq!(v["result"]["total"], "3");
    let v = json(&["futaki", "--input", "@three_skew_lines.json"]);
    assert_eq!(v["result"]["leading_term"], "3/r^1");
    assert_eq!(v["result"]["unstable_for_large_r"], true);
    let v = json(&["futaki", "--input", "@skew_planes.json"]);
    assert_eq!(v["result"]["correction_numerator"], "0");
    assert_eq!(v["result"]["verdict_text"], Value::Null);
    let v = json(&["futaki", "--input", "@three_skew_lines.json", "--base-futaki", "-1/2"]);
    assert_eq!(v["result"]["unstable_for_large_r"], false);
}

#[test]
fn unnormalized_weights_need_flag() {
    assert_eq!(chowstab(&["mu", "--input", "@unnormalized.json"]).code, 4);
    let v = json(&["mu", "--input", "@unnormalized.json", "--normalize"]);
    assert_eq!(v["result"]["value"], "-2");
}

#[test]
fn text_and_json_agree_on_values() {
    let text = chowstab(&["chow-weight", "--input", "@three_skew_lines.json"]).stdout;
    let v = json(&["chow-weight", "--input", "@three_skew_lines.json"]);
    for w in v["result"]["per_component"].as_array().unwrap() {
        assert!(text.contains(&format!("w: {}", w["w"].as_str().unwrap())));
    }
    assert!(text.contains(&format!("input_digest: {}", v["input_digest"].as_str().unwrap())));
}
