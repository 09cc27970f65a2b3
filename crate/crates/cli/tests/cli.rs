use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::str::FromStr;

use movcone_core::dataset::parse_dataset;
use movcone_core::{QVec, Rat, Registry};
use serde_json::Value;

const BLOWUP: &str = include_str!("../../core/data/blowup-point-p3.json");

fn run_with(args: &[&str], env: Option<(&str, &Path)>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_movcone"));
    cmd.args(args).env_remove("MOVCONE_DATA");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("a single JSON document")
}

fn json_rays(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|ray| {
            let entries: Vec<String> = ray.as_array().unwrap().iter().map(|x| x.to_string().trim_matches('"').to_string()).collect();
            format!("({})", entries.join(","))
        })
        .collect()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--all"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "no-such-variety"]).status.code(), Some(2));
    assert_eq!(run(&["mov", "no-such-variety"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(64));
    assert_eq!(run(&["verify", "p3", "--all"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["section", "p1xp1xp1", "--cone", "big", "--format", "csv"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["section", "p3", "--cone", "ne", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(run(&["pullback", "blowup-point-p3", "--ray-index", "1"]).status.code(), Some(1));
}

#[test]
fn cone_commands_agree_with_json() {
    let r = Registry::bundled();
    for name in r.names() {
        for cone in ["ne", "eff", "sme", "mov"] {
            let human = run(&[cone, name]);
            assert!(human.status.success(), "{cone} {name}");
            let lines: Vec<String> = stdout(&human).lines().map(str::to_string).collect();
            let doc = json(&run(&["--json", cone, name]));
            assert_eq!(doc["dataset"], name);
            assert_eq!(doc["cone"], cone);
            assert_eq!(json_rays(&doc["rays"]), lines, "{cone} {name}");
            assert!(doc["lineality"].as_array().unwrap().is_empty());
        }
    }
    let lines = stdout(&run(&["mov", "blowup-point-p3"]));
    assert_eq!(lines, "(0,1)\n(1,1)\n");
    assert_eq!(stdout(&run(&["eff", "blowup-point-p3"])), "(0,1)\n(1,-1)\n");
}

#[test]
fn other_commands_emit_json_documents() {
    let doc = json(&run(&["--json", "list"]));
    assert_eq!(doc["datasets"].as_array().unwrap().len(), 5);

    let doc = json(&run(&["--json", "verify", "--all"]));
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 5);

    let doc = json(&run(&["--json", "pullback", "blowup-point-p3", "--ray-index", "0"]));
    assert_eq!(doc["pullbacks"][0]["pullback"], serde_json::json!([1, 1]));
    assert_eq!(stdout(&run(&["pullback", "blowup-line-p3", "--ray-index", "0"])), "(1) -> (1,1)\n");

    let doc = json(&run(&["--json", "section", "p1xp1xp1", "--cone", "mov", "--format", "csv"]));
    assert_eq!(doc["content"], "1,0,0\n0,1,0\n0,0,1\n");
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 3);

    let shown = run(&["--json", "show", "blowup-point-p3"]);
    let v = parse_dataset(&stdout(&shown)).unwrap();
    assert_eq!(&v, Registry::bundled().get("blowup-point-p3").unwrap());
    assert!(stdout(&run(&["show", "blowup-point-p3"])).contains("H - E"));
}

#[test]
fn csv_sections_lift_into_their_cones() {
    let dir = tempfile::tempdir().unwrap();
    let r = Registry::bundled();
    let v = r.get("p1xp1xp1").unwrap();
    for cone in ["ne", "mov", "sme"] {
        let path = dir.path().join(format!("{cone}.csv"));
        let out = run(&["section", "p1xp1xp1", "--cone", cone, "--format", "csv", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(stdout(&out).is_empty());
        let target = match cone {
            "ne" => v.mori_cone(),
            "mov" => v.moving_cone(),
            _ => v.sme_cone().unwrap(),
        };
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        for line in text.lines() {
            let point: QVec = line.split(',').map(|x| Rat::from_str(x).unwrap() * Rat::from_integer(7.into())).collect();
            assert!(target.contains(&point), "{line}");
        }
    }
    let svg = dir.path().join("mov.svg");
    let out = run(&["section", "p1xp1xp1", "--cone", "mov", "--format", "svg", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains(r#"width="512""#));
}

#[test]
fn extra_data_directories() {
    let dir = tempfile::tempdir().unwrap();
    // E·l changed from 1 to -1, which breaks the duality
    let broken = BLOWUP.replace("blowup-point-p3", "broken").replace("[[0, 1], [-1, 1]]", "[[0, 1], [-1, -1]]");
    fs::write(dir.path().join("broken.json"), broken).unwrap();
    let d = dir.path().to_str().unwrap();

    let out = run(&["--data", d, "verify", "broken"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAILED   main_theorem"), "{text}");

    let out = run_with(&["--json", "verify", "broken"], Some(("MOVCONE_DATA", dir.path())));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    assert_eq!(run(&["--data", d, "verify", "--all"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "broken"]).status.code(), Some(2));

    fs::write(dir.path().join("bad.json"), r#"{"schema-version": 1}"#).unwrap();
    let out = run(&["--data", d, "show", "bad"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema error"));
}
