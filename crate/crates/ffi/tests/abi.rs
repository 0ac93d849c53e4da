use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use resonance_ffi::*;

const TWO_LINES: &str = r#"{"n": 4, "field": "rational", "K": [
  [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rl_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn parse_query_solve_free() {
    unsafe {
        let mut pair = ptr::null_mut();
        assert_eq!(rl_pair_from_json(cstr(TWO_LINES).as_ptr(), &mut pair), RlStatus::Ok);
        assert!(last_error().is_empty());
        let (mut n, mut k, mut kp) = (0, 0, 0);
        assert_eq!(rl_pair_dims(pair, &mut n, &mut k, &mut kp), RlStatus::Ok);
        assert_eq!((n, k, kp), (4, 4, 2));

        let (mut resonant, mut rank) = (false, 0);
        let point = cstr("[1, 1, 0, 0]");
        assert_eq!(rl_is_resonant(pair, point.as_ptr(), 1e-8, &mut resonant, &mut rank), RlStatus::Ok);
        assert!(resonant);
        let point = cstr("[1, 0, 1, 0]");
        assert_eq!(rl_is_resonant(pair, point.as_ptr(), 1e-8, &mut resonant, ptr::null_mut()), RlStatus::Ok);
        assert!(!resonant);

        let mut report = ptr::null_mut();
        assert_eq!(rl_solve(pair, 3, &mut report), RlStatus::Ok);
        let (mut points, mut expected, mut transversal) = (0, 0, false);
        assert_eq!(rl_report_summary(report, &mut points, &mut expected, &mut transversal), RlStatus::Ok);
        assert_eq!((points, expected, transversal), (2, 2, true));
        let json = CStr::from_ptr(rl_report_json(report)).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
        rl_report_free(report);
        rl_pair_free(pair);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut pair = ptr::null_mut();
        assert_eq!(rl_pair_from_json(ptr::null(), &mut pair), RlStatus::NullPointer);
        assert_eq!(rl_pair_from_json(cstr("{").as_ptr(), &mut pair), RlStatus::Parse);
        assert!(!last_error().is_empty());
        assert!(pair.is_null());
        let bad = cstr(r#"{"n": 4, "field": "rational", "K": [[1, 2]]}"#);
        assert_eq!(rl_pair_from_json(bad.as_ptr(), &mut pair), RlStatus::Dimension);
        assert_eq!(rl_pair_random(4, 7, 0, &mut pair), RlStatus::Precondition);

        assert_eq!(rl_pair_random(5, 5, 1, &mut pair), RlStatus::Ok);
        let mut report = ptr::null_mut();
        // positive-dimensional section
        assert_eq!(rl_solve(pair, 0, &mut report), RlStatus::Precondition);
        let mut resonant = false;
        let zero = cstr("[0, 0, 0, 0, 0]");
        assert_eq!(rl_is_resonant(pair, zero.as_ptr(), 1e-8, &mut resonant, ptr::null_mut()), RlStatus::ZeroInput);
        rl_pair_free(pair);

        assert_eq!(rl_pair_dims(ptr::null(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut()), RlStatus::NullPointer);
        assert!(rl_report_json(ptr::null()).is_null());
        rl_pair_free(ptr::null_mut());
        rl_report_free(ptr::null_mut());

        let mut agreements = 0;
        assert_eq!(rl_p1_cross_check(1, 2, 40, 0, &mut agreements), RlStatus::Ok);
        assert_eq!(agreements, 40);
        assert_eq!(rl_p1_cross_check(2, 1, 40, 0, &mut agreements), RlStatus::Precondition);
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(rl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/resonance.h")).unwrap();
    for name in [
        "rl_last_error",
        "rl_version",
        "rl_pair_from_json",
        "rl_pair_random",
        "rl_pair_free",
        "rl_pair_dims",
        "rl_is_resonant",
        "rl_solve",
        "rl_report_json",
        "rl_report_summary",
        "rl_report_free",
        "rl_p1_cross_check",
        "typedef struct RlPair RlPair",
        "RL_STATUS_PRECONDITION = 6",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles the C smoke program against the generated header and the static
/// library from this build, then runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libresonance_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("resonance_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
