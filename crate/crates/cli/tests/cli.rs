use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cardball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cardball"))
        .args(args)
        .env_remove("CARDBALL_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cardball(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["ord", "eval", "w^2*3+w*2+5", "norm"]), "10\n");
    assert_eq!(stdout(&["ball", "sym", "w", "w"]), "[0, w*2]\n");
    assert_eq!(stdout(&["ord", "eval", "w+w"]), "w*2\n");
    assert_eq!(stdout(&["ord", "cmp", "w*2", "w+5"]), "greater\n");
    assert_eq!(stdout(&["ord", "tail", "w^2+w*2+3"]), "1\n");
    assert_eq!(stdout(&["ord", "tail", "w^2+w*2"]), "w\n");
    assert_eq!(stdout(&["ord", "lq", "w*3", "w"]), "w*2\n");
    assert_eq!(stdout(&["ord", "diff", "w", "w^2"]), "w^2\n");
    assert_eq!(stdout(&["construct", "large-partition", "12"]), "2\n");
    assert_eq!(stdout(&["cellular", "w"]), "w^2\n");
}

#[test]
fn verify_delta_suite_succeeds() {
    let out = cardball(&["verify", "delta-thm51", "--window", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS periodic-delta-large"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    // domain error: right difference needs a <= b
    let out = cardball(&["ord", "diff", "w^2", "w"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");

    // syntax error in an ordinal literal
    assert_eq!(cardball(&["ord", "norm", "w+("]).status.code(), Some(1));
    // precondition error: 0 missing from the target set
    assert_eq!(cardball(&["construct", "delta-realize", "1,2"]).status.code(), Some(1));
    // flag validation happens before execution
    assert_eq!(cardball(&["classify", "nat", "--window", "ten"]).status.code(), Some(1));
    assert_eq!(cardball(&["--format", "xml", "ord", "norm", "1"]).status.code(), Some(1));

    // verification failure dumps the counterexamples
    let out = cardball(&["verify", "thm42"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL random-00") && text.contains("witnesses at depth 20"));
}

#[test]
fn unknown_suite_lists_known_ones() {
    let out = cardball(&["verify", "thm99"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    for name in [
        "ordinal-oracle",
        "ballean-axioms",
        "thm1",
        "classification",
        "delta-thm51",
        "thm42",
        "sn-small",
        "thin-partition",
        "invariants-table",
    ] {
        assert!(err.contains(name), "{name} missing from {err}");
    }
}

#[test]
fn json_keys_are_sorted_and_schema_holds() {
    let text = stdout(&["--format", "json", "verify", "invariants-table"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "invariants-table");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c["id"].is_string() && c["margin"].is_u64());
        assert!(c["runtime_ms"].is_null());
    }
    // keys appear in sorted order at every level
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("      \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .take(4)
        .collect();
    assert_eq!(keys, ["id", "margin", "runtime_ms", "status"]);

    let timed = json(&["--timing", "verify", "invariants-table"]);
    assert!(timed["checks"][0]["runtime_ms"].is_u64());
}

#[test]
fn golden_outputs() {
    assert_eq!(stdout(&["--format", "json", "invariants", "aleph_(w+1)"]), golden("invariants_aleph_w_plus_1.json"));
    assert_eq!(stdout(&["--format", "json", "classify", "pow:2"]), golden("classify_pow2.json"));
    assert_eq!(
        stdout(&["--format", "json", "construct", "delta-realize", "0,2,5", "--depth", "4"]),
        golden("delta_realize_0_2_5.json")
    );
    assert_eq!(stdout(&["axioms", "forward", "10"]), golden("axioms_forward_10.txt"));
}

#[test]
fn deterministic_output() {
    for args in [
        &["--format", "json", "verify", "classification", "--seed", "7"][..],
        &["verify", "thm42", "--seed", "3"][..],
        &["--format", "json", "classify", "facint"][..],
    ] {
        let a = cardball(args);
        let b = cardball(args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn window_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cardball"));
        cmd.env_remove("CARDBALL_WINDOW");
        if let Some(w) = env {
            cmd.env("CARDBALL_WINDOW", w);
        }
        let out = cmd.args(["--format", "json", "classify", "evens"]).args(extra).output().unwrap();
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["window"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 10_000);
    assert_eq!(run(Some("2000"), &[]), 2000);
    assert_eq!(run(Some("2000"), &["--window", "3000"]), 3000);
}

/// One invocation per library operation; each must succeed and print
/// something.
#[test]
fn every_operation_is_reachable() {
    let coverage: &[(&str, &[&str])] = &[
        ("compare", &["ord", "cmp", "w", "5"]),
        ("add", &["ord", "add", "w", "w^2"]),
        ("mul", &["ord", "mul", "w+1", "w"]),
        ("norm", &["ord", "norm", "w^2*3+w*2+5"]),
        ("tail", &["ord", "tail", "w^2+w"]),
        ("is_indecomposable", &["ord", "indec", "w^3"]),
        ("right_difference", &["ord", "diff", "3", "w"]),
        ("left_quotient", &["ord", "lq", "w^2+5", "w"]),
        ("grid_enumerate", &["ord", "grid", "1", "2", "2"]),
        ("min_norm_in_interval", &["ord", "minnorm", "w+3", "w*2"]),
        ("contains_norm_exactly", &["ord", "hasnorm", "w+3", "w*2", "1"]),
        ("parse/format", &["ord", "eval", "w+w^2", "canon"]),
        ("ball", &["ball", "fwd", "w", "3"]),
        ("interval_contains", &["ball", "bwd", "w*2", "w", "--contains", "w+4"]),
        ("interval_contains (plain)", &["ord", "contains", "w", "w*2", "w+1"]),
        ("cellular_radius", &["cellular", "w^2"]),
        ("path_ball_window", &["path", "3", "2", "20"]),
        ("axioms_check", &["axioms", "symmetric", "20"]),
        ("thm1_conditions/construct", &["construct", "thm1", "symmetric", "30"]),
        ("member", &["member", "periodic:p=6;r=1,5;t=0", "11"]),
        ("classify/classify_window", &["classify", "union:(pow:2);(evens)", "--window", "2000"]),
        ("delta/delta_window", &["delta", "facint", "--window", "5000", "--radius-cap", "8"]),
        ("verify_delta_large", &["delta", "odds", "--verify"]),
        ("large_partition_cell", &["construct", "large-partition", "96"]),
        ("large_partition_spec", &["construct", "large-partition", "--spec", "3"]),
        ("thm42_construct/verify", &["construct", "delta-realize", "0", "--depth", "10", "--verify", "4"]),
        ("sn_member", &["sn", "w^2+w", "--n", "2"]),
        ("sn_small_witness", &["sn", "w^2", "w"]),
        ("thin_cell_element", &["construct", "thin-partition", "--cell", "7", "--band", "2"]),
        ("thin_cell_index", &["construct", "thin-partition", "--of", "w^2*2+w+1"]),
        (
            "thin_isolation_check",
            &["construct", "thin-partition", "--cell", "3", "--band", "4", "--isolate", "2"],
        ),
        ("successor/cofinality/regular/limit/invariants", &["invariants", "aleph_w"]),
        ("coarse_equivalent", &["invariants", "aleph_1", "--against", "aleph_2"]),
        ("verify_suite", &["verify", "large-partition"]),
    ];
    for (op, args) in coverage {
        let out = stdout(args);
        assert!(!out.trim().is_empty(), "{op}: empty output");
        let v = json(args);
        assert!(!v.is_null(), "{op}");
    }
}

#[test]
fn answers_through_the_cli() {
    assert_eq!(stdout(&["ord", "mul", "w+1", "w"]), "w^2\n");
    assert_eq!(stdout(&["ord", "add", "w", "w^2"]), "w^2\n");
    assert_eq!(stdout(&["member", "periodic:p=6;r=1,5;t=0", "11"]), "true\n");
    assert_eq!(stdout(&["path", "3", "2", "20"]).lines().last().unwrap(), "size    21");

    let v = json(&["ord", "minnorm", "w+3", "w*2"]);
    assert_eq!((v["norm"].as_u64(), v["witness"].as_str()), (Some(2), Some("w*2")));
    let v = json(&["construct", "thin-partition", "--of", "w^2*2+w+1"]);
    let back = json(&["construct", "thin-partition", "--cell", &v["cell"].to_string(), "--band", "2"]);
    assert_eq!(back, "w^2*2+w+1");
    let v = json(&["sn", "w^2", "w"]);
    assert_eq!((v["z"].as_str(), v["verified"].as_bool()), (Some("w^2+w*3"), Some(true)));
    let v = json(&["construct", "thm1", "bounded"]);
    assert_eq!(v["condition_i"], false);
    let v = json(&["invariants", "aleph_1", "--against", "aleph_1"]);
    assert_eq!((v["thin"].as_str(), v["coarse_equivalent"].as_bool()), (Some("aleph_0"), Some(true)));
}
