use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nerveforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.join(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", p.to_str().unwrap()]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

// Boundary of the octahedron.
const SPHERE: &str = r#"{"simplices": [[0,2,3],[0,3,4],[0,4,5],[0,2,5],[1,2,3],[1,3,4],[1,4,5],[1,2,5]]}"#;

#[test]
fn homology_of_a_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s2.json", SPHERE);
    let o = run(&["homology", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["euler"], 2);
    assert_eq!(v["counts"], serde_json::json!([6, 12, 8]));
}

#[test]
fn nerve_of_two_hemispheres() {
    let dir = tempfile::tempdir().unwrap();
    let cover = format!(
        r#"{{"ambient": {SPHERE}, "pieces": {{"0": [[0,2,3],[0,3,4],[0,4,5],[0,2,5]], "1": [[1,2,3],[1,3,4],[1,4,5],[1,2,5]]}}, "covering": true}}"#
    );
    let f = write(dir.path(), "cover.json", &cover);
    let v = stdout_json(&run(&["nerve", f.to_str().unwrap()]));
    // Two discs meeting in a circle: the nerve is an edge, the cover is not good.
    assert_eq!(v["nerve"]["simplices"], serde_json::json!([[0, 1]]));
    assert_eq!(v["good"], false);
    assert_eq!(v["intersections"].as_array().unwrap().len(), 3);
}

#[test]
fn clumps_of_the_octahedron() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(dir.path(), "intro.json", &["--family", "introduction-model"]);
    // A scenario wraps the system; clumps reads the bare system.
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let sys = write(dir.path(), "sys.json", &s["system"].to_string());
    let v = stdout_json(&run(&["clumps", sys.to_str().unwrap()]));
    let mut ranks: Vec<u64> = v["clumps"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    ranks.sort();
    assert_eq!(ranks, vec![1, 1, 2]);
    assert_eq!(v["chains"].as_array().unwrap().len(), 2);
}

#[test]
fn list_names_every_lemma() {
    let o = run(&["verify", "--list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    for id in ["intersection-formula", "local-vanishing", "growing-ranks", "scale-ladder", "cover-lift"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ps = generate(dir.path(), "ps.json", &["--family", "lattice-patch-system", "--pieces", "3", "--seed", "4"]);
    let ps = ps.to_str().unwrap();
    assert_eq!(code(&run(&["verify", "--lemma", "intersection-formula", "--scenario", ps])), 0);
    // Wrong kind, unknown lemma, missing file.
    assert_eq!(code(&run(&["verify", "--lemma", "local-vanishing", "--scenario", ps])), 2);
    assert_eq!(code(&run(&["verify", "--lemma", "no-such", "--scenario", ps])), 2);
    assert_eq!(code(&run(&["verify", "--lemma", "goodness", "--scenario", "/nonexistent.json"])), 2);
    assert_eq!(code(&run(&["generate", "--family", "nope"])), 2);

    // A malformed chain is invalid input.
    let intro = generate(dir.path(), "intro.json", &["--family", "introduction-model"]);
    let mut s: Value = serde_json::from_str(&std::fs::read_to_string(&intro).unwrap()).unwrap();
    s["params"]["chain"] = serde_json::json!([99]);
    let bad = write(dir.path(), "bad.json", &s.to_string());
    assert_eq!(code(&run(&["verify", "--lemma", "growing-ranks", "--scenario", bad.to_str().unwrap()])), 2);

    // ε above the threshold fails the ladder.
    s["params"] = serde_json::json!({});
    s["constants"] = serde_json::json!({"n": 4, "base": "2", "epsilon": "800", "mu": "1000000"});
    let thick = write(dir.path(), "thick.json", &s.to_string());
    assert_eq!(code(&run(&["verify", "--lemma", "scale-ladder", "--scenario", thick.to_str().unwrap()])), 1);
}

#[test]
fn ladder_inconclusive_with_small_window() {
    let dir = tempfile::tempdir().unwrap();
    let ladder = r#"{"kind": "box-union", "box_union": {"dim": 2, "lattice": [[2, 0]],
        "boxes": [{"lo": [0, 0], "hi": [3, 1]}, {"lo": [0, 2], "hi": [3, 3]}, {"lo": [0, 0], "hi": [1, 3]}]}}"#;
    let f = write(dir.path(), "ladder.json", ladder);
    let o = run(&["verify", "--lemma", "window-stabilization", "--scenario", f.to_str().unwrap(), "--wmax", "4"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let s = generate(dir.path(), "boxes.json", &["--family", "periodic-boxes", "--dim", "2", "--rank", "1", "--seed", "1"]);
    let s = s.to_str().unwrap();
    let mut reports = Vec::new();
    for (i, threads) in ["1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.json"));
        let o = bin()
            .env("NERVEFORGE_THREADS", threads)
            .args(["verify", "--lemma", "all", "--scenario", s, "--seed", "9", "--report", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(matches!(code(&o), 0 | 3), "{}", String::from_utf8_lossy(&o.stdout));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["seed"], 9);
        assert_eq!(v["scenario_digest"].as_str().unwrap().len(), 64);
        assert_eq!(v["verdicts"].as_array().unwrap().len(), 4);
        v.as_object_mut().unwrap().remove("timings_ms");
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
    // No temporary files are left next to the report.
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 3, "{names:?}");
}

#[test]
fn generate_is_deterministic() {
    let a = run(&["generate", "--family", "random-box-cover", "--pieces", "5", "--seed", "7"]);
    let b = run(&["generate", "--family", "random-box-cover", "--pieces", "5", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["kind"], "cover");
    assert_eq!(v["cover"]["pieces"].as_object().unwrap().len(), 5);
}

#[test]
fn bad_thread_count_is_invalid() {
    let o = bin().env("NERVEFORGE_THREADS", "many").args(["verify", "--list"]).output().unwrap();
    assert_eq!(code(&o), 2);
}
