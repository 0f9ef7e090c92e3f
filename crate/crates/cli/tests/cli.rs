//! End-to-end runs of the binary: generate, solve, verify, reduce, oracle,
//! and the exit-code contract (0 yes, 1 no, 2 error, 3 exhausted).

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_controlctl"))
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("controlctl-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn generate_then_solve_round_trip() {
    let file = tmp("gen.eci");
    let status = bin()
        .args([
            "generate",
            "--seed",
            "9",
            "--candidates",
            "5",
            "--voters",
            "3",
            "--pool",
            "2",
            "--budget",
            "1",
            "--rule",
            "plurality",
            "--control",
            "dcac",
            "--out",
        ])
        .arg(&file)
        .status()
        .unwrap();
    assert!(status.success());

    let output = bin()
        .args(["solve", "--json", "--instance"])
        .arg(&file)
        .output()
        .unwrap();
    let code = output.status.code().unwrap();
    assert!(code == 0 || code == 1, "solve must decide, got {code}");
    let text = String::from_utf8(output.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert!(value["decision"] == "yes" || value["decision"] == "no");
    assert_eq!(value["algorithm"], "signature-dp");
    assert_eq!(value["class"], "FPT");
    std::fs::remove_file(&file).ok();
}

#[test]
fn reduce_oracle_and_verify_agree() {
    let graph = tmp("k4.graph");
    std::fs::write(
        &graph,
        "vertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n",
    )
    .unwrap();
    let instance = tmp("k4.eci");
    let status = bin()
        .args(["reduce", "--from", "cvc", "--target", "borda-ccdc", "--cover-size", "3", "--input"])
        .arg(&graph)
        .arg("--out")
        .arg(&instance)
        .status()
        .unwrap();
    assert!(status.success());

    // K4 has a vertex cover of size 3: the oracle must answer yes
    let output = bin()
        .args(["oracle", "--json", "--instance"])
        .arg(&instance)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(String::from_utf8(output.stdout).unwrap().trim()).unwrap();
    assert_eq!(value["decision"], "yes");
    let witness: Vec<String> = value["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();

    let status = bin()
        .args(["verify", "--solution", &witness.join(","), "--instance"])
        .arg(&instance)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    // an empty deletion set leaves the edge candidates ahead of p
    let status = bin()
        .args(["verify", "--solution", "", "--instance"])
        .arg(&instance)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    std::fs::remove_file(&graph).ok();
    std::fs::remove_file(&instance).ok();
}

#[test]
fn no_instances_exit_with_one() {
    let graph = tmp("k4-h2.graph");
    std::fs::write(
        &graph,
        "vertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n",
    )
    .unwrap();
    let instance = tmp("k4-h2.eci");
    // K4 has no vertex cover of size 2
    bin()
        .args(["reduce", "--from", "cvc", "--target", "borda-ccdc", "--cover-size", "2", "--input"])
        .arg(&graph)
        .arg("--out")
        .arg(&instance)
        .status()
        .unwrap();
    let status = bin().args(["solve", "--instance"]).arg(&instance).status().unwrap();
    assert_eq!(status.code(), Some(1));
    std::fs::remove_file(&graph).ok();
    std::fs::remove_file(&instance).ok();
}

#[test]
fn parse_errors_exit_with_two() {
    let file = tmp("broken.eci");
    std::fs::write(&file, "rule: nonsense\n").unwrap();
    let output = bin().args(["solve", "--instance"]).arg(&file).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("error"), "stderr should carry the diagnostic");
    std::fs::remove_file(&file).ok();
}

#[test]
fn exhausted_budgets_exit_with_three() {
    let file = tmp("big.eci");
    bin()
        .args([
            "generate",
            "--seed",
            "4",
            "--candidates",
            "10",
            "--voters",
            "3",
            "--budget",
            "4",
            "--rule",
            "borda",
            "--control",
            "ccdc",
            "--out",
        ])
        .arg(&file)
        .status()
        .unwrap();
    let status = bin()
        .args(["oracle", "--max-subsets", "2", "--instance"])
        .arg(&file)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // the environment cap behaves the same way
    let status = bin()
        .env("CONTROLCTL_WORK_BUDGET", "2")
        .args(["oracle", "--instance"])
        .arg(&file)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    std::fs::remove_file(&file).ok();
}

#[test]
fn explicit_algorithm_must_match_the_shape() {
    let file = tmp("shape.eci");
    bin()
        .args([
            "generate",
            "--seed",
            "1",
            "--candidates",
            "4",
            "--voters",
            "2",
            "--budget",
            "1",
            "--rule",
            "borda",
            "--control",
            "ccdc",
            "--out",
        ])
        .arg(&file)
        .status()
        .unwrap();
    let output = bin()
        .args(["solve", "--algorithm", "signature-dp", "--instance"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("applicable"), "should list applicable algorithms");
    std::fs::remove_file(&file).ok();
}

#[test]
fn setcover_reduction_runs_from_files() {
    let cover = tmp("cover.sc");
    std::fs::write(&cover, "universe 2\nbudget 1\nset 0 1\nset 0\n").unwrap();
    let instance = tmp("cover.eci");
    let status = bin()
        .args(["reduce", "--from", "setcover", "--target", "maximin-comb-dcdc", "--input"])
        .arg(&cover)
        .arg("--out")
        .arg(&instance)
        .status()
        .unwrap();
    assert!(status.success());
    // {x1, x2} is covered by the first set alone
    let status = bin().args(["solve", "--instance"]).arg(&instance).status().unwrap();
    assert_eq!(status.code(), Some(0));
    std::fs::remove_file(&cover).ok();
    std::fs::remove_file(&instance).ok();
}

#[test]
fn mcc_reduction_dispatches_to_the_xp_class() {
    let graph = tmp("mcc.graph");
    // two colors, one vertex each, cross edge present: a yes-instance
    std::fs::write(&graph, "vertices 2\ncolors 0\ncolors 1\nedge 0 1\n").unwrap();
    let instance = tmp("mcc.eci");
    let status = bin()
        .args(["reduce", "--from", "mcc", "--target", "plurality-ccac", "--input"])
        .arg(&graph)
        .arg("--out")
        .arg(&instance)
        .status()
        .unwrap();
    assert!(status.success());
    let output = bin()
        .args(["solve", "--json", "--instance"])
        .arg(&instance)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(String::from_utf8(output.stdout).unwrap().trim()).unwrap();
    assert_eq!(value["decision"], "yes");
    assert_eq!(value["class"], "W[1]-h/XP");
    assert_eq!(value["algorithm"], "xp-guess");
    std::fs::remove_file(&graph).ok();
    std::fs::remove_file(&instance).ok();
}

#[test]
fn maximin_destructive_adding_uses_the_two_bundle_rule() {
    let file = tmp("maximin.eci");
    bin()
        .args([
            "generate",
            "--seed",
            "21",
            "--candidates",
            "4",
            "--voters",
            "3",
            "--pool",
            "3",
            "--budget",
            "2",
            "--rule",
            "maximin",
            "--control",
            "dcac",
            "--comb",
            "--bundle-density",
            "1/3",
            "--out",
        ])
        .arg(&file)
        .status()
        .unwrap();
    let output = bin()
        .args(["solve", "--json", "--instance"])
        .arg(&file)
        .output()
        .unwrap();
    let value: serde_json::Value =
        serde_json::from_str(String::from_utf8(output.stdout).unwrap().trim()).unwrap();
    assert_eq!(value["algorithm"], "two-bundle");
    assert_eq!(value["class"], "P");
    std::fs::remove_file(&file).ok();
}

#[test]
fn bench_smoke_suite_exits_cleanly() {
    let status = bin().args(["bench", "--suite", "smoke"]).status().unwrap();
    assert!(status.success());
}
