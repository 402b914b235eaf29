use std::path::Path;
use std::process::{Command, Output};

use fo52_lab::{ExperimentReport, Status};

fn fo52(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fo52"))
        .args(args)
        .env("FO52_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> ExperimentReport {
    ExperimentReport::from_json_str(&String::from_utf8_lossy(&out.stdout)).expect("stdout is a report")
}

#[test]
fn jacobi_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = fo52(&["jacobi", "--seed", "2"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    let b = fo52(&["jacobi", "--seed", "2"], dir.path());
    assert_eq!(report(&a).deterministic(), report(&b).deterministic());
    assert_eq!(report(&a).results["jacobi_class_zero"], true);
}

#[test]
fn out_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let o = fo52(
        &["stratify", "--seed", "1", "--points", "4", "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let r = ExperimentReport::from_json_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.status, Status::Pass);
    // 4 random points and 15 line points, plus the header
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 + 15);
    assert!(text.starts_with("cubics_zero,kind,point,quintic_zero,rank"));
}

#[test]
fn usage_and_input_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(fo52(&["compat", "--seed", "1", "--k", "6"], dir.path()).status.code(), Some(4));
    assert_eq!(fo52(&["span", "--seed", "1", "--family", "X9"], dir.path()).status.code(), Some(4));
    assert_eq!(fo52(&["conjecture-d", "--seed", "1"], dir.path()).status.code(), Some(4));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"grid_seed\": 1}").unwrap();
    assert_eq!(
        fo52(&["conjecture-d", "--seed", "1", "--pi52", bad.to_str().unwrap()], dir.path()).status.code(),
        Some(4)
    );
    assert_eq!(fo52(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn pi52_build_verify_and_conjecture_d() {
    let dir = tempfile::tempdir().unwrap();
    let built = fo52(&["pi52"], dir.path());
    assert_eq!(built.status.code(), Some(0));
    assert!(dir.path().join("pi52.json").exists());
    let r = report(&built);
    assert_eq!((r.results["rank"].as_u64(), r.results["kernel_dim"].as_u64()), (Some(126), Some(126)));

    let verified = fo52(&["pi52", "--verify"], dir.path());
    assert_eq!(verified.status.code(), Some(0));

    let d = fo52(&["conjecture-d", "--seed", "1"], dir.path());
    assert_eq!(d.status.code(), Some(0));
    let r = report(&d);
    assert_eq!(r.results["inclusion"], true);
    assert_eq!(r.results["dim_t_w"].as_u64(), Some(26));
}

#[test]
fn compat_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let shared = fo52(&["compat", "--seed", "3", "--k", "4"], dir.path());
    assert_eq!(shared.status.code(), Some(0));
    assert_eq!(report(&shared).results["bracket_class_zero"], true);
    let generic = fo52(&["compat", "--seed", "3", "--k", "1", "--threads", "2"], dir.path());
    assert_eq!(generic.status.code(), Some(0));
    assert_eq!(report(&generic).results["bracket_class_zero"], false);
}
