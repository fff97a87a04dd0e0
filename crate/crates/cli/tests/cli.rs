use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn report_keys_in_order() {
    let out = hft(&["homology", "fig3b_left", "--set", "p,q_a,q_b,r"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "command",
            "version",
            "coefficients",
            "orientation",
            "inputs",
            "result",
            "error",
            "timing_ms"
        ]
    );
    assert_eq!(v["error"], Value::Null);
    assert!(v["result"]["homology"]
        .as_object()
        .unwrap()
        .values()
        .all(|h| h == "0"));
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn no_timing_output_is_reproducible() {
    let args = [
        "--no-timing",
        "prune",
        "cascade",
        "--set",
        "p,q,r,q_prime,r_prime",
        "--seed",
        "5",
    ];
    let (a, b) = (hft(&args), hft(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = report(&a);
    assert!(v.get("timing_ms").is_none());
    assert_eq!(
        v["result"]["pruned"],
        serde_json::json!(["p", "r", "r_prime"])
    );
}

#[test]
fn incomplete_set_is_a_result_not_an_error() {
    let out = hft(&["--no-timing", "complete", "fig3a", "--set", "p,q,r"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["completeness"]["complete"], false);
    assert_eq!(v["result"]["completeness"]["witness"], "p");
}

#[test]
fn no_prune_on_incomplete_set_fails() {
    let out = hft(&[
        "--no-timing",
        "homology",
        "fig3a",
        "--set",
        "p,q,r",
        "--no-prune",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["error"]["kind"].is_string());
}

#[test]
fn input_errors_exit_2() {
    let out = hft(&["validate", "/nonexistent/tangle.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("nonexistent"));
    let out = hft(&["homology", "fig3a", "--set", "p,nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hft(&["homology", "fig3a"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "usage");
}

#[test]
fn set_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let json = write(dir.path(), "set.json", r#"["p", "q_a", "q_b", "r"]"#);
    let plain = write(dir.path(), "set.txt", "p, q_a\nq_b, r\n");
    let a = report(&hft(&[
        "--no-timing",
        "complete",
        "fig3b_left",
        "--set",
        &format!("@{json}"),
    ]));
    let b = report(&hft(&[
        "--no-timing",
        "complete",
        "fig3b_left",
        "--set",
        &format!("@{plain}"),
    ]));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["completeness"]["complete"], true);
    assert_eq!(a["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn validate_round_trip_of_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = hft(&["example", "fig5"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write(
        dir.path(),
        "fig5.json",
        std::str::from_utf8(&out.stdout).unwrap(),
    );
    let v = report(&hft(&["--no-timing", "validate", &path]));
    assert_eq!(v["error"], Value::Null);
    let again = hft(&["--no-timing", "intersect", &path]);
    let named = hft(&["--no-timing", "intersect", "fig5"]);
    assert_eq!(report(&again)["result"], report(&named)["result"]);
}

#[test]
fn broken_file_reports_problems() {
    let dir = tempfile::tempdir().unwrap();
    let text = String::from_utf8(hft(&["example", "fig3a"]).stdout).unwrap();
    let bad = text.replacen("\"plane\"", "\"torus\"", 1);
    let path = write(dir.path(), "bad.json", &bad);
    let out = hft(&["--no-timing", "validate", &path]);
    assert_eq!(out.status.code(), Some(2));
    let v = report(&out);
    assert_eq!(v["result"]["valid"], false);
    assert_eq!(v["result"]["report"]["errors"][0]["kind"], "structural");
}

#[test]
fn manifest_matches_fixture() {
    let out = hft(&["example", "fig3b_left", "--manifest"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let fixture = include_str!("../../core/fixtures/fig3b_left.manifest.json");
    assert_eq!(v, serde_json::from_str::<Value>(fixture).unwrap());
}

#[test]
fn system_check_and_limit() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"sets": [["r"], ["q_a", "r"], ["p", "q_a", "q_b", "r"]]}"#,
    );
    let out = hft(&[
        "--no-timing",
        "system",
        "limit",
        "fig3b_left",
        "--system",
        &good,
    ]);
    let v = report(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["result"]["total_limit"]["display"], "0");

    let bad = write(
        dir.path(),
        "bad.json",
        r#"[["p", "s"], ["p", "q", "r", "s"]]"#,
    );
    let out = hft(&["--no-timing", "system", "check", "fig6b", "--system", &bad]);
    let v = report(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    let text = v["result"].to_string();
    assert!(text.contains("\"p\"") && text.contains("\"q\""), "{text}");
    let out = hft(&["--no-timing", "system", "limit", "fig6b", "--system", &bad]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grow_emits_a_valid_tangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = hft(&["grow", "--length", "14"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let path = write(
        dir.path(),
        "grown.json",
        std::str::from_utf8(&out.stdout).unwrap(),
    );
    assert_eq!(hft(&["grow", "--length", "14"]).stdout, out.stdout);
    let v = report(&hft(&["--no-timing", "mu", &path]));
    assert_eq!(v["error"], Value::Null);
    let bad = hft(&["grow", "--saddle", "-1/2"]);
    assert_eq!(bad.status.code(), Some(1));
}
