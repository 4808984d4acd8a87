//! End-to-end tests of the `descent` binary: output contracts, exit codes,
//! env-var overrides and byte-level determinism.

use std::process::{Command, Output};

fn descent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .env_remove("DESCENT_TYPE")
        .env_remove("DESCENT_N")
        .env_remove("DESCENT_FORMAT")
        .env_remove("DESCENT_JOBS")
        .env_remove("DESCENT_MAX_RANK")
        .env_remove("DESCENT_NO_CACHE")
        .env_remove("DESCENT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn multiply_text_output() {
    let out = descent(&["multiply", "--type", "D", "--n", "4", "[4]", "[1,3]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1*[1,1,2] + 1*[1,2,1] + 2*[1,3]\n");

    let out = descent(&["multiply", "--n", "4", "[]", "[3,1]'"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1*[3,1]'\n");

    let out = descent(&["multiply", "--type", "b", "--n", "2", "[2]", "[2]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1*[1,1] + 2*[2]\n");
}

#[test]
fn multiply_json_output() {
    let out = descent(&[
        "multiply", "--type", "d", "--n", "4", "--format", "json", "[4]", "[2]",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["algebra"], "D");
    assert_eq!(v["n"], 4);
    assert_eq!(v["terms"][0]["q"], serde_json::json!([2, 1, 1]));
    assert_eq!(v["terms"][0]["primed"], true);
    assert_eq!(v["terms"][0]["c"], 1);
}

#[test]
fn usage_errors_exit_2() {
    // Unparseable operand.
    let out = descent(&["multiply", "--n", "4", "oops", "[2]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());

    // Illegal prime.
    let out = descent(&["multiply", "--n", "4", "[1,3]'", "[2]"]);
    assert_eq!(out.status.code(), Some(2));

    // Invalid weight (n - 1).
    let out = descent(&["multiply", "--n", "4", "[3]", "[2]"]);
    assert_eq!(out.status.code(), Some(2));

    // Rank over the cap.
    let out = descent(&["table", "--n", "9", "--type", "d"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown suite.
    let out = descent(&["verify", "nonsense", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing rank entirely (clap-level usage error).
    let out = descent(&["multiply", "[2]", "[2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn templates_listing() {
    let out = descent(&["templates", "--n", "4", "[1,1]", "[2]"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("9 template(s)"));
    assert!(text.contains("case: 4b"));

    let out = descent(&["templates", "--n", "4", "[4]", "[1,3]"]);
    assert!(stdout_of(&out).contains("4 template(s)"));

    let out = descent(&["templates", "--n", "4", "[]", "[]"]);
    let text = stdout_of(&out);
    assert!(text.contains("1 template(s)"));
    assert!(text.contains("4"));

    let out = descent(&[
        "templates", "--n", "4", "--format", "json", "[2,2]'", "[4]'",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["count"], 5);

    // Type-B listings carry no rule case and read past the corner entry.
    let out = descent(&["templates", "--type", "B", "--n", "2", "[2]", "[2]"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("3 template(s)"));
    assert!(!text.contains("case:"));
}

#[test]
fn bijection_output() {
    let out = descent(&["bijection", "--n", "4", "[1,3]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "J = {s_1', s_1}\nJc = {s_2, s_3}\n");

    let out = descent(&["bijection", "--n", "4", "[]"]);
    assert_eq!(stdout_of(&out), "J = {}\nJc = {s_1', s_1, s_2, s_3}\n");

    let out = descent(&["bijection", "--n", "4", "[2]"]);
    assert_eq!(stdout_of(&out), "J = {s_2}\nJc = {s_1', s_1, s_3}\n");
}

#[test]
fn table_shapes() {
    let out = descent(&["table", "--n", "2", "--type", "d"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim_end().lines().count(), 16);

    let out = descent(&["table", "--n", "2", "--type", "d", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["products"].as_array().unwrap().len(), 16);

    // Identity row passes through unchanged.
    let text_out = descent(&["table", "--n", "3", "--type", "d"]);
    for line in stdout_of(&text_out).lines() {
        if let Some(rest) = line.strip_prefix("[]") {
            let (lhs, rhs) = rest.split_once('=').unwrap();
            let q = lhs.trim().trim_start_matches('*').trim();
            assert_eq!(rhs.trim(), format!("1*{q}"));
        }
    }
}

#[test]
fn verify_suites_pass_and_report() {
    let out = descent(&["verify", "rule", "--n", "2..3", "--no-cache"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("rule n=2 [D]: PASS"));
    assert!(text.contains("rule n=3 [D]: PASS"));

    let out = descent(&["verify", "ideal", "--n", "4", "--no-cache"]);
    assert!(out.status.success());

    let out = descent(&[
        "verify", "quotient", "--n", "4", "--no-cache", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let report = &v.as_array().unwrap()[0];
    assert_eq!(report["check"], "quotient");
    assert_eq!(report["n"], 4);
    assert_eq!(report["pass"], true);
    assert_eq!(report["counterexamples"], serde_json::json!([]));
    assert!(report["elapsed_ms"].is_number());
}

#[test]
fn verify_rule_reports_published_discrepancy() {
    let out = descent(&[
        "verify", "rule", "--n", "4", "--no-cache", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let findings = v[0]["findings"].as_array().expect("findings present");
    assert_eq!(findings.len(), 1);
    assert_eq!(findings[0]["p"], "[2,2]'");
    assert_eq!(findings[0]["rule_equals_oracle"], true);
    assert_eq!(findings[0]["rule_equals_published"], false);
}

#[test]
fn output_is_byte_identical_across_runs_and_jobs() {
    // Timing-free commands must match to the byte.
    let a = descent(&["table", "--n", "3", "--type", "d", "--format", "json"]);
    let b = descent(&["table", "--n", "3", "--type", "d", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);

    let one = descent(&[
        "verify", "rule", "--n", "3", "--no-cache", "--jobs", "1", "--format", "json",
    ]);
    let many = descent(&[
        "verify", "rule", "--n", "3", "--no-cache", "--jobs", "4", "--format", "json",
    ]);
    // elapsed_ms may differ; compare everything else.
    let strip = |bytes: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(strip(&one.stdout), strip(&many.stdout));
}

#[test]
fn env_overrides_mirror_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(["multiply", "--n", "4", "[4]", "[2]"])
        .env("DESCENT_FORMAT", "json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["algebra"], "D");

    let out = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(["multiply", "[2]", "[2]"])
        .env("DESCENT_N", "2")
        .env("DESCENT_TYPE", "b")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1*[1,1] + 2*[2]\n");
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cached = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(["verify", "relations", "--n", "3", "--format", "json"])
        .env("DESCENT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(cached.status.success());
    // Second run hits the cache written by the first.
    let cached_again = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(["verify", "relations", "--n", "3", "--format", "json"])
        .env("DESCENT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    let uncached = descent(&["verify", "relations", "--n", "3", "--no-cache", "--format", "json"]);
    let strip = |bytes: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(strip(&cached.stdout), strip(&uncached.stdout));
    assert_eq!(strip(&cached_again.stdout), strip(&uncached.stdout));
    assert!(dir.path().read_dir().unwrap().next().is_some(), "cache file written");
}
