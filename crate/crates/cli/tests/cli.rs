//! The binary end to end: output shape, exit codes and written files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.leg"))
}

fn legch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legch")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dga_prints_the_hopf_differential() {
    let o = legch(&["dga", corpus("hopf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d m12 = 0"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.leg");
    std::fs::write(&path, "legendrian v1\nevents:\nL 1\nX 9\n").unwrap();
    let o = legch(&["dga", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(legch(&["dga", dir.path().join("missing.leg").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn geo_check_reports_both_verdicts() {
    let o = legch(&["geo", "check", "1+t"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("admissible"));
    let o = legch(&["geo", "check", "t^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("inadmissible"));
}

#[test]
fn realize_writes_a_diagram_that_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("three.leg");
    let o = legch(&["geo", "realize", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("recomputed P=3"));
    let text = std::fs::read_to_string(&out).unwrap();
    let e1 = text.lines().find_map(|l| l.strip_prefix("# e1 ")).unwrap().to_string();
    let e2 = text.lines().find_map(|l| l.strip_prefix("# e2 ")).unwrap().to_string();
    let o = legch(&["blch", out.to_str().unwrap(), "--e1", &e1, "--e2", &e2]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P=3"), "{}", stdout(&o));
}

#[test]
fn unreachable_and_inadmissible_requests_exit_apart() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.leg");
    assert_eq!(legch(&["geo", "realize", "4 + t^-1", "--out", out.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(legch(&["geo", "realize", "t", "--out", out.to_str().unwrap()]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn sweep_lists_every_pair() {
    for (name, pairs) in [("unknot", 1), ("hopf", 9)] {
        let o = legch(&["sweep", corpus(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let s = stdout(&o);
        assert_eq!(s.lines().filter(|l| l.starts_with("blch ")).count(), pairs, "{name}");
        assert!(s.ends_with("verdict consistent\n"));
    }
    assert!(stdout(&legch(&["sweep", corpus("unknot").to_str().unwrap()])).contains("P=t\n"));
}

#[test]
fn duality_on_the_hopf_pair() {
    let o = legch(&["duality", corpus("hopf").to_str().unwrap(), "--e1", "{m12=1}", "--e2", "{}"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("not homotopic"), "{s}");
    assert!(s.contains("main verdict agrees: homotopic false"));
}

#[test]
fn json_report_ignores_the_thread_count() {
    let file = corpus("lambda-r2");
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_legch"))
            .args(["report", "--json", file.to_str().unwrap()])
            .env("LEGCH_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert!(String::from_utf8_lossy(&one).contains("\"schema_version\": 1"));
}
