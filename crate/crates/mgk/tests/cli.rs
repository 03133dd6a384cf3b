//! Exit-code contract and report determinism of the `mgk` binary.

use std::path::PathBuf;
use std::process::Command;

fn mgk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mgk"))
}

fn write_config(dir: &std::path::Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const GL2_CONFIG: &str = r#"
lambdas = [[1, 0], [0, 1]]
c = "1"
xi = ["1/2", "1/2"]

[root_datum]
preset = "GL"
rank = 2
"#;

#[test]
fn passing_check_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "gl2.toml", GL2_CONFIG);
    let out = mgk().args(["key-prop", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("[PASS] key-prop"));
}

#[test]
fn malformed_rational_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", &GL2_CONFIG.replace("\"1\"", "\"1/0\""));
    let out = mgk().args(["key-prop", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("zero denominator"));
}

#[test]
fn unknown_key_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "unknown.toml",
        &format!("{GL2_CONFIG}\nfrobnicate = 1\n"),
    );
    let out = mgk().args(["key-prop", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_cap_exceeded_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "big.toml",
        r#"
xi = ["0", "0", "0", "0", "0", "0"]

[root_datum]
preset = "GL"
rank = 6
"#,
    );
    let out = mgk()
        .args(["coinvariants", "--cap", "100", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("group too large"));
}

#[test]
fn json_config_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "gl2.json",
        r#"{
            "root_datum": { "preset": "GL", "rank": 2 },
            "lambdas": [[1, 0], [0, 1]],
            "xi": ["0", "0"]
        }"#,
    );
    let out = mgk().args(["multiplier", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
}

#[test]
fn json_reports_are_deterministic_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "gl2.toml", GL2_CONFIG);
    let mut payloads = Vec::new();
    for run in 0..2 {
        let json_path = dir.path().join(format!("out{run}.json"));
        let status = mgk()
            .args(["key-prop", "--config"])
            .arg(&cfg)
            .arg("--json")
            .arg(&json_path)
            .status()
            .unwrap();
        assert!(status.success());
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("timing_ms");
        }
        payloads.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(payloads[0], payloads[1]);
}

#[test]
fn suite_under_signed_convention_still_reports() {
    // the signed convention is lift-dependent on the doubled family, so the
    // smoke suite fails some entries; it must still produce the full report
    // (exit 1, not an input error or crash)
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("signed.json");
    let out = mgk()
        .args(["suite", "--profile", "smoke", "--convention", "signed", "--json"])
        .arg(&json_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    // the discrimination shows up on the doubled family
    let doubled = reports
        .iter()
        .find(|r| r["check"].as_str().unwrap().contains("doubled") && r["check"].as_str().unwrap().contains("key-prop"))
        .expect("doubled key-prop entry present");
    assert_eq!(doubled["passed"], false);
    assert_eq!(doubled["details"]["eta_independent"], false);
}

#[test]
fn signed_convention_flag_reaches_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    // the doubled family under the signed convention is lift-dependent, so
    // the check fails with exit 1 while still producing its report
    let cfg = write_config(
        dir.path(),
        "doubled.toml",
        r#"
lambdas = [[1, 0], [1, 0], [0, 1], [0, 1]]
c = "1"
xi = ["0", "0"]

[root_datum]
preset = "GL"
rank = 2
"#,
    );
    let out = mgk()
        .args(["key-prop", "--convention", "signed", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("[FAIL] key-prop"));

    let out = mgk()
        .args(["key-prop", "--convention", "unsigned", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
