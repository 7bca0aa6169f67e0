use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_engelkit"));
    c.env_remove("ENGELKIT_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn zoo_file(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.path().join(format!(
        "{name}-{}.json",
        extra.join("_").replace(['=', '-'], "")
    ));
    let mut args = vec!["zoo", name, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const NOT_JACOBI: &str = r#"{"field":{"kind":"prime","p":3},"dim":3,
  "brackets":[{"i":0,"j":1,"value":[0,0,1]},{"i":0,"j":2,"value":[1,0,0]}]}"#;

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let h = zoo_file(&dir, "heisenberg", &["--field", "p=2"]);
    let o = run(&["validate", p(&h)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["valid"], true);

    let bad = write(&dir, "bad.json", NOT_JACOBI);
    let o = run(&["validate", p(&bad)]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));

    let nofield = write(&dir, "nofield.json", r#"{"dim": 2, "brackets": []}"#);
    assert_eq!(code(&run(&["validate", p(&nofield)])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/file.json"])), 2);
}

#[test]
fn invariants_examples() {
    let dir = TempDir::new().unwrap();
    let h = stdout_json(&run(&[
        "invariants",
        p(&zoo_file(&dir, "heisenberg", &["--field", "p=2"])),
    ]));
    assert_eq!(h["nilpotent"], true);
    assert_eq!(h["cores"]["gamma"]["dim"], 3);

    let a = stdout_json(&run(&[
        "invariants",
        p(&zoo_file(&dir, "affine", &["--field", "p=3"])),
    ]));
    assert_eq!(a["cores"]["gamma"]["dim"], 0);
    assert_eq!(a["cores"]["tau"]["dim"], 0);
    assert_eq!(a["supersolvable"], true);

    let s = stdout_json(&run(&[
        "invariants",
        p(&zoo_file(&dir, "sl2", &["--field", "p=5"])),
    ]));
    assert_eq!(s["cores"]["delta"]["dim"], 0);
    assert_eq!(s["solvable"], false);

    // lattice-based entries are null over the rationals
    let q = stdout_json(&run(&[
        "invariants",
        p(&zoo_file(&dir, "heisenberg", &["--field", "rational"])),
    ]));
    assert_eq!(q["nilpotent"], true);
    assert_eq!(q["center"]["dim"], 1);
    assert!(q["frattini"].is_null() && q["cores"].is_null());
}

#[test]
fn lattice_examples() {
    let dir = TempDir::new().unwrap();
    let count = |file: &Path, flag: &str| {
        stdout_json(&run(&["lattice", p(file), flag]))["count"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(
        count(&zoo_file(&dir, "affine", &["--field", "p=2"]), "--maximal"),
        3
    );
    let l3 = zoo_file(&dir, "lm", &["--m", "3", "--field", "p=5"]);
    assert_eq!(count(&l3, "--codim1"), 1);
    assert_eq!(
        count(&zoo_file(&dir, "sl2", &["--field", "p=5"]), "--ideals"),
        2
    );
    // the kind flags are exclusive
    assert_eq!(code(&run(&["lattice", p(&l3), "--maximal", "--ideals"])), 2);
    // rationals cannot be enumerated
    assert_eq!(
        code(&run(&[
            "lattice",
            p(&zoo_file(&dir, "affine", &["--field", "rational"]))
        ])),
        2
    );
}

#[test]
fn families_examples() {
    let dir = TempDir::new().unwrap();
    let h = stdout_json(&run(&[
        "families",
        p(&zoo_file(&dir, "heisenberg", &["--field", "p=3"])),
    ]));
    for k in ["G", "T", "H", "D"] {
        assert_eq!(h["families"][k], serde_json::json!([]));
        assert_eq!(h["empty_family_is_L"][k], true);
    }
    let a = stdout_json(&run(&[
        "families",
        p(&zoo_file(&dir, "affine", &["--field", "p=3"])),
    ]));
    let bases = |k: &str| {
        a["families"][k]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["basis"].clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(bases("G"), bases("T"));
    assert_eq!(bases("G").len(), 3);
    assert!(a["families"]["G"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["witness_x"].is_array()));
    let s = stdout_json(&run(&[
        "families",
        p(&zoo_file(&dir, "sl2", &["--field", "p=5"])),
    ]));
    assert!(!s["families"]["D"].as_array().unwrap().is_empty());
}

#[test]
fn zoo_round_trip_and_errors() {
    let dir = TempDir::new().unwrap();
    for (name, extra) in [
        ("sl2", vec!["--field", "p=5"]),
        ("l1", vec!["--field", "q=4", "--gamma0", "0,1"]),
        ("lm", vec!["--m", "2", "--field", "p=2"]),
        ("abelian", vec!["--dim", "4", "--field", "p=3"]),
        ("rotation", vec!["--field", "p=3"]),
        ("affine", vec!["--field", "rational"]),
    ] {
        let path = zoo_file(&dir, name, &extra);
        let written: Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let o = run(&["validate", p(&path)]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout_json(&o)["dim"], written["dim"]);
        // stdout and --out agree byte for byte
        let mut args = vec!["zoo", name];
        args.extend_from_slice(&extra);
        let again: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
        assert_eq!(again, written, "{name}");
    }
    let l3 = zoo_file(&dir, "lm", &["--m", "3", "--field", "p=5"]);
    assert_eq!(stdout_json(&run(&["validate", p(&l3)]))["dim"], 5);
    assert_eq!(code(&run(&["zoo", "lm", "--m", "4", "--field", "p=5"])), 2);
    assert_eq!(code(&run(&["zoo", "no-such-algebra"])), 2);
    assert_eq!(code(&run(&["zoo", "sl2", "--field", "q=6"])), 2);
}

#[test]
fn verify_fixture_directory() {
    let dir = TempDir::new().unwrap();
    zoo_file(&dir, "heisenberg", &["--field", "p=3"]);
    zoo_file(&dir, "affine", &["--field", "p=3"]);
    let o = run(&["verify", "--corpus", p(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 0);

    write(&dir, "corrupted.json", NOT_JACOBI);
    let o = run(&["verify", "--corpus", p(dir.path())]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    let failing: Vec<_> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == "fail")
        .collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["theorem"], "lie-axioms");
    assert_eq!(failing[0]["payload"]["counterexample"]["kind"], "jacobi");
}

#[test]
fn verify_small_budget_skips_with_warning() {
    let o = run(&["--budget", "10", "verify"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let v = stdout_json(&o);
    assert!(v["summary"]["skipped"].as_u64().unwrap() > 100);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_default_corpus_reports_known_failures() {
    let out = TempDir::new().unwrap();
    let file = out.path().join("report.json");
    let o = bin()
        .args(["verify", "--out", p(&file)])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    // counterexamples among the sl2-type fixtures make the run exit 1
    assert_eq!(code(&o), 1);
    let text = std::fs::read_to_string(&file).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let theorems: std::collections::BTreeSet<_> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == "fail")
        .map(|r| r["theorem"].as_str().unwrap().to_string())
        .collect();
    let want: std::collections::BTreeSet<_> = [
        "c-ideal-solvable",
        "codim-one-decomposition",
        "lm-codim-one",
    ]
    .map(String::from)
    .into();
    assert_eq!(theorems, want);

    // output is identical across thread counts
    let file2 = out.path().join("report2.json");
    bin()
        .args(["verify", "--out", p(&file2)])
        .env("RAYON_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(text, std::fs::read_to_string(&file2).unwrap());
}

#[test]
fn env_budget_and_text_format() {
    let dir = TempDir::new().unwrap();
    let sl2 = zoo_file(&dir, "sl2", &["--field", "p=5"]);
    // 31 one-dimensional subspaces alone exceed a budget of 5
    let o = bin()
        .args(["lattice", p(&sl2)])
        .env("ENGELKIT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = run(&["--format", "text", "invariants", p(&sl2)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("solvable: false"), "{text}");
}
