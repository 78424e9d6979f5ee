use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lsplab::graph::{catalog, cycle, g_emn, to_graph6};
use serde_json::Value;

fn lsplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsplab")).args(args).env("LSPLAB_THREADS", "1").output().unwrap()
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Drop timing fields so runs can be compared byte for byte.
fn without_timing(text: &str) -> Vec<Value> {
    json_lines(text)
        .into_iter()
        .map(|mut v| {
            if let Some(o) = v.as_object_mut() {
                o.remove("elapsed_ms");
            }
            v
        })
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn certify_hk_exit_codes() {
    let ok = lsplab(&["certify-hk", "--k", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["bundle"]["gamma"], "40/41");
    assert_eq!(v["check"]["in_m_plus"], true);
    assert_eq!(v["check"]["violates_rank"], true);
    assert!(v["bundle"]["margin"].as_str().is_some());

    assert_eq!(lsplab(&["certify-hk", "--k", "1"]).status.code(), Some(2));

    let start = std::time::Instant::now();
    let big = lsplab(&["certify-hk", "--k", "10"]);
    assert_eq!(big.status.code(), Some(0));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn classify_reports_and_errors() {
    let c6 = to_graph6(&cycle(6).unwrap());
    let out = lsplab(&["classify", "--graph6", &c6, "--graph6", "!!", "--graph6", &to_graph6(&g_emn()), "--lsplus"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["report"]["verdicts"]["perfect"], "yes");
    assert!(lines[1]["error"].as_str().unwrap().contains("graph6"));
    assert_eq!(lines[2]["report"]["verdicts"]["ls-plus-perfect"], "no");
    let ids = lines[2]["certificate_ids"].as_array().unwrap();
    assert_eq!(ids.len(), 1);
    assert!(ids[0].as_str().unwrap().starts_with("lsplus-"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lsplab(&[]).status.code(), Some(2));
    assert_eq!(lsplab(&["classify"]).status.code(), Some(2));
    assert_eq!(lsplab(&["reduce", "--graph6", "Dhc"]).status.code(), Some(2));
    assert_eq!(lsplab(&["survey", "--catalog", "/nonexistent/catalog.g6"]).status.code(), Some(2));
}

#[test]
fn reduce_prints_replayed_trace() {
    let out = lsplab(&["reduce", "--graph6", "Ehf_"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["replay_matches_input"], true);
    assert!(v["trace"]["terminal"] == "G_LT" || v["trace"]["terminal"] == "G_EMN");
}

#[test]
fn separate_emits_witness_for_emn() {
    let out = lsplab(&["separate", "--graph6", &to_graph6(&g_emn())]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&String::from_utf8(out.stdout).unwrap());
    assert!(lines.iter().any(|l| !l["witness"].is_null() && l["violation"].is_string()));
}

#[test]
fn empty_catalog_gives_empty_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(dir.path(), "empty.g6", "# nothing here\n\n");
    let out_path = dir.path().join("out.jsonl").display().to_string();
    let out = lsplab(&["survey", "--catalog", &cat, "--json-out", &out_path]);
    assert_eq!(out.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["summary"]["total"], 0);
    assert_eq!(summary["summary"]["errors"], 0);
    assert_eq!(fs::read_to_string(out_path).unwrap(), "");
}

#[test]
fn six_node_imperfect_survey_flags_two() {
    let out = lsplab(&["survey", "--nodes", "6", "--imperfect-only", "--lsplus"]);
    assert_eq!(out.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    let flagged = summary["summary"]["ls_plus_imperfect"].as_array().unwrap();
    assert_eq!(flagged.len(), 2);
}

#[test]
fn bipartite_slice_is_perfect() {
    let dir = tempfile::tempdir().unwrap();
    let text: Vec<String> = catalog(7).unwrap().iter().filter(|g| g.is_bipartite()).map(to_graph6).collect();
    let cat = write(dir.path(), "bip.g6", &text.join("\n"));
    let out = lsplab(&["survey", "--catalog", &cat, "--predicates", "perfect,near-bipartite"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(recs.len(), text.len());
    for r in recs {
        assert_eq!(r["report"]["verdicts"]["perfect"], "yes");
        assert_eq!(r["report"]["verdicts"].as_object().unwrap().len(), 2);
    }
}

#[test]
fn survey_is_deterministic_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let mut text: Vec<String> = catalog(5).unwrap().iter().map(to_graph6).collect();
    text.insert(3, "not-a-graph".into());
    let cat = write(dir.path(), "five.g6", &text.join("\n"));
    let cfg = write(dir.path(), "cfg.toml", "checkpoint_every = 4\n");
    let run = |out: &str, cp: Option<&str>| {
        let mut args = vec!["survey", "--catalog", cat.as_str(), "--config", cfg.as_str(), "--json-out", out];
        if let Some(cp) = cp {
            args.extend(["--checkpoint", cp]);
        }
        lsplab(&args)
    };

    let a = dir.path().join("a.jsonl").display().to_string();
    let b = dir.path().join("b.jsonl").display().to_string();
    assert_eq!(run(&a, None).status.code(), Some(0));
    assert_eq!(run(&b, None).status.code(), Some(0));
    let full = fs::read_to_string(&a).unwrap();
    assert_eq!(without_timing(&full), without_timing(&fs::read_to_string(&b).unwrap()));
    let records = without_timing(&full);
    assert_eq!(records.len(), text.len());
    assert!(records[3]["error"].as_str().unwrap().starts_with("line 4"));

    // interrupted after the first chunk
    let c = dir.path().join("c.jsonl").display().to_string();
    let cp = dir.path().join("cp.json").display().to_string();
    let first: Vec<&str> = full.lines().take(4).collect();
    fs::write(&c, format!("{}\n", first.join("\n"))).unwrap();
    fs::write(&cp, format!(r#"{{"input":"{cat}","input_len":{},"next":4}}"#, text.len())).unwrap();
    let resumed = run(&c, Some(&cp));
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(without_timing(&fs::read_to_string(&c).unwrap()), records);
    let summary: Value = serde_json::from_slice(&resumed.stdout).unwrap();
    assert_eq!(summary["summary"]["total"], text.len());
    assert_eq!(summary["summary"]["errors"], 1);
    let saved: Value = serde_json::from_str(&fs::read_to_string(&cp).unwrap()).unwrap();
    assert_eq!(saved["next"], text.len());

    // a checkpoint for other input is refused
    fs::write(&cp, r#"{"input":"elsewhere","input_len":3,"next":1}"#).unwrap();
    assert_eq!(run(&c, Some(&cp)).status.code(), Some(2));
}
