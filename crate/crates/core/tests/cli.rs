use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use minor_toolkit::certificate::{Certificate, Payload};
use minor_toolkit::graph::{graph6, named};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_minor-toolkit"));
    c.env_remove("MINOR_TOOLKIT_PROFILE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_k5() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k5.g6", "D~{\n");
    let out = run(&["analyze", "--input", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert_eq!(rec["chi"], 5);
    assert_eq!(rec["h"], 5);
    assert_eq!(rec["rho"], "5");
    assert_eq!(rec["kappa"], 4);
    assert_eq!(rec["duchet_meyniel"]["satisfied"], true);
}

#[test]
fn analyze_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.g6", "");
    let out = run(&["analyze", "--input", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    let mixed = write(dir.path(), "mixed.g6", "D~{\nD~\n");
    let out = run(&["analyze", "--input", s(&mixed)]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 2);
    assert!(recs[1]["error"].as_str().unwrap().starts_with("line 2:"));

    let bad = write(dir.path(), "bad.g6", "D~\n");
    assert_eq!(run(&["analyze", "--input", s(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.g6");
    assert_eq!(run(&["analyze", "--input", s(&missing)]).status.code(), Some(2));
}

#[test]
fn dimacs_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.col", "c four cycle\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    let out = run(&["analyze", "--input", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert_eq!(rec["chi"], 2);
    assert_eq!(rec["h"], 3);
    assert_eq!(rec["bipartite_minor"]["satisfied"], true);
}

#[test]
fn petersen_k5_model_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "petersen.g6", "IheA@GUAo\n");
    let report = dir.path().join("minor.jsonl");
    let out = run(&["extract", "--mode", "minor", "--t", "5", "--input", s(&pet), "--verify", "--out", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    let rec: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(rec["outcome"], "minor_found");
    assert_eq!(rec["verification"].as_array().unwrap().len(), 0);

    let out = run(&["verify", "--input", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["verdict"], "valid");

    // move one branch-set vertex so two branch sets stop touching
    let mut tampered: Value = rec.clone();
    let sets = tampered["certificates"][0]["payload"]["model"]["branch_sets"].as_array_mut().unwrap();
    let last = sets.last_mut().unwrap().as_array_mut().unwrap();
    last.pop();
    let bad = write(dir.path(), "tampered.json", &tampered.to_string());
    let out = run(&["verify", "--input", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["verdict"], "invalid");

    let k5 = write(dir.path(), "k5.g6", "D~{\n");
    let out = run(&["verify", "--input", s(&report), "--host", s(&k5)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lines(&out)[0]["verdict"], "wrong_host");
}

#[test]
fn conflicting_coloring_names_the_edge() {
    let dir = tempfile::tempdir().unwrap();
    let g = named::cycle(5);
    let cert = Certificate::new(&g, Payload::Coloring { colors: vec![0, 1, 0, 1, 1], claimed: Some(2) }, true);
    let f = write(dir.path(), "coloring.json", &serde_json::to_string(&cert).unwrap());
    let out = run(&["verify", "--input", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let rec = &lines(&out)[0];
    assert_eq!(rec["verdict"], "invalid");
    assert!(rec["reasons"][0].as_str().unwrap().contains("edge (3, 4)"), "{rec}");

    // no embedded host and none supplied
    let bare = Certificate { host_graph6: None, ..cert };
    let f = write(dir.path(), "bare.json", &serde_json::to_string(&bare).unwrap());
    let out = run(&["verify", "--input", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lines(&out)[0]["verdict"], "wrong_host");
}

#[test]
fn extract_rejections_and_refusals() {
    let out = run(&["extract", "--generate", "cycle:100"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert_eq!(rec["status"], "rejected");
    assert!(rec["certificates"].as_array().unwrap().is_empty());

    let out = run(&["extract", "--generate", "cycle:100", "--profile", "paper"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("symbolic"));

    assert_eq!(run(&["extract", "--generate", "cycle:10", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["extract", "--generate", "cycle:10", "--profile", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn planted_extraction_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("dense.jsonl");
    let out =
        run(&["extract", "--generate", "planted:80:20:0.95:0.05", "--count", "3", "--verify", "--out", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    for line in text.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert!(matches!(rec["outcome"].as_str(), Some("dense_subgraph" | "minor_found")), "{rec}");
        if rec["outcome"] == "dense_subgraph" {
            assert_eq!(rec["certificates"][0]["kind"], "connectivity");
        }
    }
    let out = run(&["verify", "--input", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().all(|r| r["verdict"] == "valid"));
}

#[test]
fn experiment_suites() {
    let out = run(&["experiment", "--suite", "duchet_meyniel"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let summary = &recs.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["instances"], 996);
    assert!(summary["max_ratio"].as_f64().unwrap() <= 1.0);

    let out = run(&["experiment", "--suite", "special_subset", "--count", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).last().unwrap()["summary"]["passed"], 1000);

    let out = run(&["experiment", "--suite", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("duchet_meyniel") && err.contains("steiner"), "{err}");
}

#[test]
fn experiment_falsifier_is_serialized() {
    // a profile that halves the bound makes K3 a counterexample
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k3.g6", &format!("{}\n", graph6::encode(&named::complete(3))));
    let out = run(&["experiment", "--suite", "duchet_meyniel", "--input", s(&f), "--set", "duchet_factor=1/2"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = lines(&out);
    assert_eq!(recs[0]["pass"], false);
    assert_eq!(recs[0]["graph6"], "Bw");
    assert_eq!(recs[0]["certificate"]["kind"], "minor_model");
    assert_eq!(recs.last().unwrap()["summary"]["falsifiers"][0], 0);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["experiment", "--suite", "steiner", "--count", "50", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = bin().args(args).args(["--jobs", "3"]).output().unwrap();
    assert_eq!(a.stdout, c.stdout);

    let cfg = dir.path().join("cfg.json");
    let config = serde_json::json!({
        "command": "analyze", "inputs": [], "generate": "gnp:12:0.4", "seed": 3, "count": 4,
        "profile": "desk-small", "overrides": [], "out": null, "jobs": 1, "verify": false,
        "gates": {"chromatic": 40, "independence": 40, "hall": 16, "hadwiger": 12, "connectivity": 400, "budget": 2000000}
    });
    std::fs::write(&cfg, config.to_string()).unwrap();
    let from_config = run(&["analyze", "--config", s(&cfg)]);
    let from_flags = run(&["analyze", "--generate", "gnp:12:0.4", "--seed", "3", "--count", "4"]);
    assert_eq!(from_config.status.code(), Some(0));
    assert_eq!(from_config.stdout, from_flags.stdout);
    assert_eq!(lines(&from_config).len(), 4);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--generate", "hexagon:5"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--generate", "cycle:5", "--gates", "speed=3"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn profile_directory() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = minor_toolkit::profile::ConstantsProfile::desk_small();
    p.name = "mine".into();
    std::fs::write(dir.path().join("mine.json"), serde_json::to_string(&p).unwrap()).unwrap();
    let out = bin()
        .args(["analyze", "--generate", "complete:4", "--profile", "mine"])
        .env("MINOR_TOOLKIT_PROFILE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["duchet_meyniel"]["profile"], "mine");
}
