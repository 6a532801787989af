use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use skewcheck::fixtures::functor_corpus;
use skewcheck::io::{to_json, Document, FunctorDoc, StructureDoc};

fn skewcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcheck"))
        .args(args)
        .env_remove("SKEWCHECK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let o = skewcheck(&full);
    let v = serde_json::from_slice(&o.stdout).expect("json output");
    (o.status.code().expect("exit code"), v)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn exit_codes() {
    assert_eq!(skewcheck(&["check", "--builtin", "terminal"]).status.code(), Some(0));
    assert_eq!(skewcheck(&["check", "--builtin", "paper-left"]).status.code(), Some(1));
    assert_eq!(skewcheck(&["check", "--builtin", "no-such"]).status.code(), Some(2));
    assert_eq!(skewcheck(&["census", "--max-size", "4"]).status.code(), Some(3));
    assert_eq!(skewcheck(&["census", "--max-size", "0"]).status.code(), Some(2));
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\n  \"format\": \"structure\",\n  \"category\": [\n");
    let o = skewcheck(&["check", "--in", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json:"), "{err}");
}

#[test]
fn check_text_summaries() {
    let o = skewcheck(&["check", "--builtin", "terminal"]);
    assert!(stdout(&o).contains("5/5 axioms, 1 unit"));
    let o = skewcheck(&["check", "--builtin", "bz2"]);
    assert!(stdout(&o).contains("5/5 axioms, 2 units"));
    let o = skewcheck(&["check", "--builtin", "paper-left"]);
    let text = stdout(&o);
    assert!(text.contains("signature (F,T,T,T,T)"), "{text}");
    assert!(text.contains("results agree"), "{text}");
}

#[test]
fn masked_check_skips_pentagon() {
    let (code, v) = structured(&["check", "--builtin", "paper-left", "--mask", "left,mid,right,unitunit"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["report"]["requested"], 4);
}

#[test]
fn structured_output_is_deterministic() {
    for args in [
        &["check", "--builtin", "bz2"][..],
        &["check", "--builtin", "paper-right"],
        &["census", "--max-size", "2"],
    ] {
        let mut full = vec!["--format", "structured"];
        full.extend_from_slice(args);
        let a = skewcheck(&full);
        let b = skewcheck(&full);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let names = stdout(&skewcheck(&["list"]));
    for name in names.lines() {
        let path = dir.path().join(format!("{name}.json"));
        let o = skewcheck(&["export", "--builtin", name, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let (c1, direct) = structured(&["check", "--builtin", name]);
        let (c2, via_file) = structured(&["check", "--in", path.to_str().unwrap()]);
        assert_eq!(c1, c2, "{name}");
        assert_eq!(direct["report"], via_file["report"], "{name}");
    }
}

#[test]
fn functor_classifications() {
    let dir = tempfile::tempdir().unwrap();
    let expected = [
        ("terminal-identity", "strong", 0),
        ("terminal-to-codisc2", "strong", 0),
        ("bz2-twist", "strong", 0),
        ("terminal-to-discrete2-max", "F0 candidates: 0 (no unit map exists)", 1),
        ("arrow2-join-to-leftproj", "normal", 0),
        ("arrow2-join-to-chain3-shifted", "lax", 0),
    ];
    let corpus = functor_corpus();
    assert_eq!(corpus.len(), expected.len());
    for (f, (name, text, code)) in corpus.iter().zip(expected) {
        assert_eq!(f.name, name);
        let doc = |s: &skewcheck::monfun::SkewMonoidalCategory| {
            to_json(&Document::Structure(StructureDoc::from_structure(&s.structure, Some(&s.unit))))
        };
        let src = write(dir.path(), &format!("{name}-src.json"), &doc(&f.src));
        let dst = write(dir.path(), &format!("{name}-dst.json"), &doc(&f.dst));
        let map = FunctorDoc {
            obj_map: f.functor.obj_map().to_vec(),
            mor_map: f.functor.mor_map().to_vec(),
            phi: f.phi.components().to_vec(),
            unit_map: None,
        };
        let map = write(dir.path(), &format!("{name}-map.json"), &to_json(&map));
        let o = skewcheck(&[
            "functor",
            "--src",
            src.to_str().unwrap(),
            "--dst",
            dst.to_str().unwrap(),
            "--map",
            map.to_str().unwrap(),
        ]);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(code), "{name}: {out}");
        assert!(out.contains(text), "{name}: {out}");
    }
}

#[test]
fn functor_between_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(dir.path(), "id.json", r#"{"obj_map":[0],"mor_map":[0],"phi":[0]}"#);
    let o = skewcheck(&["functor", "--src", "terminal", "--dst", "terminal", "--map", map.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strong, F0 candidates: 1"));
    let o = skewcheck(&["functor", "--src", "discrete2-proj", "--dst", "terminal", "--map", map.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_table() {
    let o = skewcheck(&["census", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| (T,T,T,T,T) |     5 |"), "{text}");
    assert!(text.contains("| (F,T,F,F,T) |    12 |"), "{text}");
    assert!(text.contains("| total       |    33 |"), "{text}");
}

#[test]
fn budget_from_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_skewcheck"))
            .args(["census", "--max-size", "2"])
            .env("SKEWCHECK_BUDGET", budget)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("10"), Some(3));
    assert_eq!(run("33"), Some(0));
    let flag = skewcheck(&["--budget", "10", "census", "--max-size", "2"]);
    assert_eq!(flag.status.code(), Some(3));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = skewcheck(&["--format", "structured", "--out", path.to_str().unwrap(), "check", "--builtin", "codisc2"]);
    assert_eq!(o.status.code(), Some(0));
    let direct = skewcheck(&["--format", "structured", "check", "--builtin", "codisc2"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}
