//! End-to-end tests of the `qtcat` binary: exit codes, pinned output
//! lines, environment-variable handling, byte-for-byte determinism of
//! the data products, and conformance of the verification report to its
//! published JSON schema.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

const FIGURE_SSPF: &str = r#"{"m":5,"n":7,"r":3,"cols":[0,0,2,2,4],"labels":[2,2,1,3,3]}"#;

fn qtcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtcat"))
        .args(args)
        .env_remove("QTCAT_OUTPUT_DIR")
        .env_remove("QTCAT_VERIFY_LEVEL")
        .output()
        .expect("spawning qtcat")
}

fn qtcat_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qtcat"));
    cmd.args(args)
        .env_remove("QTCAT_OUTPUT_DIR")
        .env_remove("QTCAT_VERIFY_LEVEL");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawning qtcat")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn help_and_version_exit_zero() {
    let help = qtcat(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout);
    for sub in [
        "count",
        "enumerate",
        "catalan",
        "hikita",
        "standardize",
        "bijection",
        "poincare",
        "bizley",
        "touch-profile",
        "verify",
    ] {
        assert!(text.contains(sub), "help must mention {sub}");
    }
    assert_eq!(qtcat(&["--version"]).status.code(), Some(0));
}

#[test]
fn unknown_flags_and_bad_values_exit_one() {
    assert_eq!(qtcat(&["--definitely-not-a-flag"]).status.code(), Some(1));
    assert_eq!(
        qtcat(&["count", "--m", "x", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        qtcat(&["verify", "--level", "bogus"]).status.code(),
        Some(1)
    );
}

#[test]
fn count_uses_closed_form_on_coprime_grids() {
    let out = stdout_of(&qtcat(&["count", "--m", "3", "--n", "4", "--r", "2"]));
    assert_eq!(out.trim(), "30 (method=closed-form)");
    let pf = stdout_of(&qtcat(&[
        "count",
        "--m",
        "3",
        "--n",
        "4",
        "--objects",
        "pf",
    ]));
    assert_eq!(pf.trim(), "16 (method=closed-form)");
}

#[test]
fn count_falls_back_to_enumeration_off_coprime_grids() {
    let out = stdout_of(&qtcat(&["count", "--m", "2", "--n", "4"]));
    assert_eq!(out.trim(), "3 (method=enumeration)");
}

#[test]
fn polynomial_commands_reject_non_coprime_grids() {
    let out = qtcat(&["catalan", "--m", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn catalan_latex_output_is_pinned() {
    let out = stdout_of(&qtcat(&[
        "catalan", "--m", "2", "--n", "3", "--format", "latex",
    ]));
    assert_eq!(out.trim(), r"(q+t)\,x_1^{2}");
}

#[test]
fn standardize_prints_the_figure_example() {
    let out = stdout_of(&qtcat(&["standardize", "--json", FIGURE_SSPF]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "cols: 0,0,2,2,4");
    assert_eq!(lines[1], "parking: 2,3,1,5,4");
    assert_eq!(lines[2], "window: [1,5,0,2,3]_3");
}

#[test]
fn standardize_json_format_round_trips() {
    let out = stdout_of(&qtcat(&[
        "standardize",
        "--json",
        FIGURE_SSPF,
        "--format",
        "json",
    ]));
    let v: Value = serde_json::from_str(&out).expect("json output");
    assert_eq!(v["window"], "[1,5,0,2,3]_3");
    assert_eq!(v["parking"]["labels"], serde_json::json!([2, 3, 1, 5, 4]));
    assert_eq!(v["parking"]["r"], serde_json::json!(5));
}

#[test]
fn bijection_round_trips_through_the_window() {
    let window = stdout_of(&qtcat(&["bijection", "--json", FIGURE_SSPF]));
    let window = window.trim();
    assert_eq!(window, "[1,5,0,2,3]_3");
    let back = stdout_of(&qtcat(&["bijection", "--from-window", window, "--n", "7"]));
    let got: Value = serde_json::from_str(&back).expect("json output");
    let original: Value = serde_json::from_str(FIGURE_SSPF).unwrap();
    assert_eq!(got, original);
}

#[test]
fn bijection_from_window_requires_n() {
    let out = qtcat(&["bijection", "--from-window", "[1,5,0,2,3]_3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn poincare_output_is_pinned() {
    let full = stdout_of(&qtcat(&[
        "poincare", "--m", "2", "--n", "3", "--weight", "2",
    ]));
    assert_eq!(full.trim(), "t^2 + 1");
    let half = stdout_of(&qtcat(&[
        "poincare", "--m", "2", "--n", "3", "--weight", "2", "--half",
    ]));
    assert_eq!(half.trim(), "t + 1");
}

#[test]
fn bizley_counts_match_enumeration_on_the_unit_ray() {
    let out = stdout_of(&qtcat(&["bizley", "--m", "1", "--n", "1", "--max-k", "5"]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("k,closed_form_count,enumerated_count,match")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let catalan = ["1", "2", "5", "14", "42"];
    assert_eq!(rows.len(), catalan.len());
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (k + 1).to_string());
        assert_eq!(row[1], catalan[k]);
        assert_eq!(row[2], catalan[k]);
        assert_eq!(row[3], "yes");
    }
}

#[test]
fn touch_profile_output_is_pinned() {
    let out = stdout_of(&qtcat(&[
        "touch-profile",
        "--m",
        "1",
        "--n",
        "1",
        "--k",
        "3",
    ]));
    let expected = "statistic,index,count\n\
                    phi,1,2\n\
                    phi,2,2\n\
                    phi,3,1\n\
                    psi,1,1\n\
                    psi,2,1\n\
                    psi,3,2\n";
    assert_eq!(out, expected);
}

#[test]
fn enumerate_weight_filter_selects_exactly_the_fiber() {
    let out = stdout_of(&qtcat(&[
        "enumerate",
        "--m",
        "5",
        "--n",
        "7",
        "--r",
        "3",
        "--weight",
        "2,2,1",
    ]));
    let mut lines = out.lines();
    let header = lines.next().expect("header row");
    assert_eq!(header, qtcatalan::parking::CSV_HEADER.join(","));
    assert_eq!(lines.count(), 784);
}

#[test]
fn enumerate_rejects_weight_for_parking_functions() {
    let out = qtcat(&[
        "enumerate",
        "--m",
        "3",
        "--n",
        "4",
        "--weight",
        "1,1,1",
        "--objects",
        "pf",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_leaves_dinv_blank_off_coprime_grids() {
    let out = stdout_of(&qtcat(&["enumerate", "--m", "2", "--n", "4"]));
    for line in out.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[qtcatalan::parking::CSV_HEADER.len() - 1], "");
    }
}

#[test]
fn catalan_and_hikita_agree_through_the_cli() {
    let a = stdout_of(&qtcat(&[
        "catalan", "--m", "3", "--n", "4", "--r", "2", "--format", "json",
    ]));
    let b = stdout_of(&qtcat(&[
        "hikita", "--m", "3", "--n", "4", "--r", "2", "--format", "json",
    ]));
    let va: Value = serde_json::from_str(&a).unwrap();
    let vb: Value = serde_json::from_str(&b).unwrap();
    assert_eq!(va, vb);
}

#[test]
fn data_products_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let rerun = |args: &[&str], name: &str| -> (Vec<u8>, Vec<u8>) {
        let p1 = dir.path().join(format!("{name}-1"));
        let p2 = dir.path().join(format!("{name}-2"));
        for p in [&p1, &p2] {
            let mut full: Vec<&str> = args.to_vec();
            let ptext = p.to_str().unwrap().to_string();
            let leaked: &str = Box::leak(ptext.into_boxed_str());
            full.extend(["--out", leaked]);
            assert_eq!(qtcat(&full).status.code(), Some(0));
        }
        (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap())
    };
    for (args, name) in [
        (
            &[
                "catalan", "--m", "3", "--n", "4", "--r", "2", "--format", "json",
            ][..],
            "catalan",
        ),
        (
            &["enumerate", "--m", "3", "--n", "4", "--r", "2"][..],
            "enumerate",
        ),
        (
            &["bizley", "--m", "2", "--n", "3", "--max-k", "6"][..],
            "bizley",
        ),
    ] {
        let (first, second) = rerun(args, name);
        assert!(!first.is_empty());
        assert_eq!(first, second, "{name} must be byte-identical across runs");
    }
}

#[test]
fn relative_out_paths_resolve_under_the_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtcat_env(
        &["count", "--m", "3", "--n", "4", "--out", "sub/count.txt"],
        &[("QTCAT_OUTPUT_DIR", dir.path().to_str().unwrap())],
    );
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.path().join("sub/count.txt")).unwrap();
    assert_eq!(written.trim(), "5 (method=closed-form)");
}

#[test]
fn verify_level_comes_from_flag_then_env_then_default() {
    let level_of = |out: &Output| -> String {
        let v: Value = serde_json::from_str(&stdout_of(out)).unwrap();
        v["level"].as_str().unwrap().to_string()
    };
    let by_default = qtcat(&["verify", "--format", "json"]);
    assert_eq!(by_default.status.code(), Some(0));
    assert_eq!(level_of(&by_default), "quick");
    let by_env = qtcat_env(
        &["verify", "--format", "json"],
        &[("QTCAT_VERIFY_LEVEL", "quick")],
    );
    assert_eq!(level_of(&by_env), "quick");
    // The flag wins over a bogus environment value.
    let by_flag = qtcat_env(
        &["verify", "--level", "quick", "--format", "json"],
        &[("QTCAT_VERIFY_LEVEL", "bogus")],
    );
    assert_eq!(by_flag.status.code(), Some(0));
    assert_eq!(level_of(&by_flag), "quick");
    // A bogus environment value without the flag is an error.
    let bad_env = qtcat_env(&["verify"], &[("QTCAT_VERIFY_LEVEL", "bogus")]);
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn verify_text_report_lists_every_check() {
    let out = stdout_of(&qtcat(&["verify", "--level", "quick", "--seed", "7"]));
    assert!(out.contains("CatEqualsHikita@(3,4,2)"));
    assert!(out.contains("CodinvTwoAlgorithms@(5,7,w=(2,2,1))"));
    assert!(out
        .lines()
        .all(|l| { l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("level=") }));
    assert!(out.trim_end().ends_with("passed=39/39"));
}

// ---------------------------------------------------------------------------
// Schema conformance: a small structural validator covering exactly the
// constructs the published schema uses.

fn check_type(expected: &str, value: &Value) -> bool {
    match expected {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        other => panic!("unsupported type keyword {other:?}"),
    }
}

fn validate(schema: &Value, value: &Value, at: &str, errors: &mut Vec<String>) {
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        if !check_type(t, value) {
            errors.push(format!("{at}: expected {t}, got {value}"));
            return;
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{at}: {value} is not one of {allowed:?}"));
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let re = regex::Regex::new(pattern).expect("valid pattern in schema");
        let text = value.as_str().unwrap_or_default();
        if !re.is_match(text) {
            errors.push(format!("{at}: {text:?} does not match {pattern:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if value.as_i64().is_some_and(|v| v < min) {
            errors.push(format!("{at}: {value} is below the minimum {min}"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    errors.push(format!("{at}: missing required key {key:?}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if props.is_none_or(|p| !p.contains_key(key)) {
                    errors.push(format!("{at}: unexpected key {key:?}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(sub, v, &format!("{at}.{key}"), errors);
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{at}[{i}]"), errors);
        }
    }
}

#[test]
fn verify_json_report_conforms_to_the_published_schema() {
    let schema_path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/verify_report.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let out = qtcat(&["verify", "--level", "quick", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let mut errors = Vec::new();
    validate(&schema, &report, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    assert_eq!(report["all_pass"], Value::Bool(true));
    assert_eq!(report["total"], serde_json::json!(39));
}
