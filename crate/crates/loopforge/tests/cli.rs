use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const C2: &str = "loop 2\n0 1\n1 0\n";
const D8: &str = "group 4\n1 0 3 2\n0 3 2 1\n";
/// a = (0 1)(2 3), H = <a(1 3)>, K = {1, a}.
const D8_FOLDER: &str = "[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n1 2 3 0\n[K]\n0 1 2 3\n1 0 3 2\n";
/// Klein four-group as a loop of exponent 2.
const V4: &str = "loop 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_loopforge"));
    c.args(args).env_remove("LOOPFORGE_CAP");
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn summary(out: &str) -> serde_json::Value {
    serde_json::from_str(out.lines().last().unwrap()).unwrap()
}

#[test]
fn check_loop_passes_on_c2() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "c2.loop", C2);
    let o = run(&["check-loop", s(&p), "--identities", "bruck"], &[]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let first: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first["command"], "check-loop");
    assert_eq!(first["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(summary(&out)["summary"]["failed"], 0);
}

#[test]
fn d8_folder_is_not_ar() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "d8.folder", D8_FOLDER);
    assert_eq!(code(&run(&["check-folder", s(&p), "--level", "folder"], &[])), 0);
    assert_eq!(code(&run(&["check-folder", s(&p), "--level", "ar"], &[])), 1);
}

#[test]
fn sieve_lists_admissible_q() {
    let o = run(&["qclass", "--sieve", "70000"], &[]);
    assert_eq!(code(&o), 0);
    let qs: Vec<u64> = stdout(&o)
        .lines()
        .filter_map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["q"].as_u64())
        .collect();
    assert_eq!(qs, [5, 9, 17, 257, 65537]);
    let o = run(&["qclass", "7"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(r#""kind":"excluded""#));
}

#[test]
fn malformed_input_exits_2() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "bad.loop", "loop 2\n0 1\n");
    let o = run(&["check-loop", s(&p)], &[]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let p = put(&d, "notlatin.loop", "loop 2\n0 1\n1 1\n");
    assert_eq!(code(&run(&["check-loop", s(&p)], &[])), 2);
    assert_eq!(code(&run(&["check-loop", "/nonexistent/x.loop"], &[])), 2);
}

#[test]
fn cap_exits_3() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "v4.loop", V4);
    assert_eq!(code(&run(&["envelope", s(&p)], &[("LOOPFORGE_CAP", "2")])), 3);
    assert_eq!(code(&run(&["envelope", s(&p)], &[])), 0);
}

#[test]
fn output_is_deterministic() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "v4.loop", V4);
    let a = run(&["envelope", s(&p)], &[]);
    let b = run(&["envelope", s(&p)], &[]);
    assert_eq!(a.stdout, b.stdout);
    let t = run(&["--timing", "envelope", s(&p)], &[]);
    assert!(summary(&stdout(&t))["summary"]["elapsed_ms"].is_u64());
    assert!(summary(&stdout(&a))["summary"].get("elapsed_ms").is_none());
}

#[test]
fn enumerate_writes_files_and_summary() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("enum");
    let o = run(&["enumerate", "--order", "5", "--canonical", "--out", s(&out)], &[]);
    assert_eq!(code(&o), 0);
    let loops = std::fs::read_dir(&out)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "loop"))
        .count();
    assert_eq!(loops, 6);
    assert_eq!(std::fs::read_to_string(out.join("summary.ndjson")).unwrap(), stdout(&o));
    let again = d.path().join("again");
    let r = run(&["enumerate", "--order", "5", "--canonical", "--reversed", "--out", s(&again)], &[]);
    for i in 0..6 {
        let f = format!("loop-5-{i:05}.loop");
        assert_eq!(std::fs::read(out.join(&f)).unwrap(), std::fs::read(again.join(&f)).unwrap());
    }
    assert_eq!(code(&r), 0);
}

#[test]
fn envelope_fold_round_trip() {
    let d = TempDir::new().unwrap();
    let p = put(&d, "v4.loop", V4);
    let f = d.path().join("v4.folder");
    let l = d.path().join("back.loop");
    assert_eq!(code(&run(&["envelope", s(&p), "--emit-folder", s(&f)], &[])), 0);
    assert_eq!(code(&run(&["fold2loop", s(&f), "--emit-loop", s(&l)], &[])), 0);
    assert_eq!(code(&run(&["check-loop", s(&l)], &[])), 0);
    for cmd in ["lemmas", "heiss", "theorem1"] {
        let o = run(&[cmd, s(&f)], &[]);
        assert!(code(&o) == 0, "{cmd}: {}", stdout(&o));
    }
}

#[test]
fn search_a_hits_are_bx2p() {
    let d = TempDir::new().unwrap();
    let g = put(&d, "d8.grp", D8);
    let out = d.path().join("sa");
    assert_eq!(code(&run(&["search-a", s(&g), "--out", s(&out)], &[])), 0);
    let mut n = 0;
    for e in std::fs::read_dir(&out).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "folder") {
            n += 1;
            assert_eq!(code(&run(&["check-folder", s(&p), "--level", "bx2p"], &[])), 0);
        }
    }
    assert!(n > 0);
}

#[test]
fn search_folder_with_trivial_h() {
    let d = TempDir::new().unwrap();
    let g = put(&d, "d8.grp", D8);
    let h = put(&d, "h.sub", "subgroup 4\n");
    let out = d.path().join("sf");
    let o = run(&["search-folder", s(&g), "--h", s(&h), "--out", s(&out)], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(summary(&stdout(&o))["summary"]["results"].as_u64().unwrap() > 0);
}
