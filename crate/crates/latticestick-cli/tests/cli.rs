//! End-to-end tests of the `latticestick` binary: exit codes, output shape,
//! and worker-count determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latticestick"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_square(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("square.json");
    std::fs::write(&path, r#"{"vertices": [[0,0,0],[2,0,0],[2,2,0],[0,2,0]]}"#).unwrap();
    path
}

#[test]
fn classify_square_is_unknot_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_square(dir.path());
    let out = run(&["classify", square.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""class":"unknot""#), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_64() {
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["census"]); // missing required --max-sticks
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn invalid_polygon_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices": [[0,0,0],[1,1,0],[0,1,0]]}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_and_info_run_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_square(dir.path());
    let out = run(&["validate", square.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""valid":true"#));
    let out = run(&["info", square.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""planar":true"#));
}

/// `level` output re-validates and classifies identically to its input.
#[test]
fn level_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.json");
    // valid polygon with four x-stick endpoints at x=1: not properly leveled
    std::fs::write(
        &path,
        r#"{"vertices": [[0,0,0],[1,0,0],[1,1,0],[2,1,0],[2,2,0],[1,2,0],[1,2,1],[1,0,1],[0,0,1]]}"#,
    )
    .unwrap();
    let leveled = dir.path().join("leveled.json");
    let out = run(&["level", path.to_str().unwrap(), "--out", leveled.to_str().unwrap()]);
    assert!(out.status.success());
    let before = run(&["classify", path.to_str().unwrap()]);
    let after = run(&["classify", leveled.to_str().unwrap()]);
    assert!(after.status.success());
    assert_eq!(stdout(&before), stdout(&after));
    let info = run(&["info", leveled.to_str().unwrap()]);
    assert!(stdout(&info).contains(r#""properly_leveled":true"#));
}

#[test]
fn examples_write_valid_polygons() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["examples", "--dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["square.json", "trefoil_12.json", "figure8_14.json"] {
        let path = dir.path().join(name);
        let out = run(&["validate", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name} invalid");
    }
    let tref = run(&["classify", dir.path().join("trefoil_12.json").to_str().unwrap()]);
    assert!(stdout(&tref).contains(r#""class":"3_1""#), "{}", stdout(&tref));
    let fig8 = run(&["classify", dir.path().join("figure8_14.json").to_str().unwrap()]);
    assert!(stdout(&fig8).contains(r#""class":"4_1""#), "{}", stdout(&fig8));
}

/// Census files are byte-identical regardless of worker count.
#[test]
fn census_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let out = run(&[
        "census", "--max-sticks", "10", "--jobs", "1", "--out", a.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "census", "--max-sticks", "10", "--jobs", "8", "--out", b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes_a = std::fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
}

#[test]
fn verify_12_passes() {
    let out = run(&["verify", "--max-sticks", "12", "--pretty"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS trefoil 3_1 realized at 12 sticks"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
