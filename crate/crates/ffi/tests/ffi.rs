use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use fata_ffi::*;

const PARITY: &str = "type dfa
alphabet a
states e o
neutral e
plus e e e
plus e o o
plus o e o
plus o o e
delta a e o
delta a o e
accept o
";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut FataAutomaton {
    let mut m = ptr::null_mut();
    let src = c(text);
    assert_eq!(
        unsafe { fata_automaton_parse(src.as_ptr(), &mut m) },
        FataStatus::Ok
    );
    m
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fata_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn take(s: *mut std::ffi::c_char) -> Option<String> {
    if s.is_null() {
        return None;
    }
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { fata_string_free(s) };
    Some(out)
}

#[test]
fn parity_round_trip_and_queries() {
    let m = parse(PARITY);
    unsafe {
        assert_eq!(fata_automaton_num_states(m), 2);
        assert!(fata_automaton_is_deterministic(m));

        let mut text = ptr::null_mut();
        assert_eq!(fata_automaton_to_string(m, &mut text), FataStatus::Ok);
        let text = take(text).unwrap();
        let again = parse(&text);

        let mut equal = false;
        let mut w = ptr::null_mut();
        assert_eq!(
            fata_equivalent(m, again, &mut equal, &mut w),
            FataStatus::Ok
        );
        assert!(equal);
        assert!(w.is_null());

        let mut accepted = false;
        let f = c("a(a)+a");
        assert_eq!(fata_member(m, f.as_ptr(), &mut accepted), FataStatus::Ok);
        assert!(accepted);

        let mut empty = true;
        let mut w = ptr::null_mut();
        assert_eq!(fata_is_empty(m, &mut empty, &mut w), FataStatus::Ok);
        assert!(!empty);
        assert_eq!(take(w).as_deref(), Some("a"));

        let mut comp = ptr::null_mut();
        assert_eq!(fata_complement(m, &mut comp), FataStatus::Ok);
        let mut meet = ptr::null_mut();
        assert_eq!(
            fata_product(m, comp, FataProductMode::Intersection, &mut meet),
            FataStatus::Ok
        );
        assert_eq!(
            fata_is_empty(meet, &mut empty, ptr::null_mut()),
            FataStatus::Ok
        );
        assert!(empty);

        let mut included = true;
        let mut w = ptr::null_mut();
        assert_eq!(fata_subset(comp, m, &mut included, &mut w), FataStatus::Ok);
        assert!(!included);
        assert_eq!(take(w).as_deref(), Some("0"));

        let mut det = ptr::null_mut();
        assert_eq!(fata_determinize(m, 16, &mut det), FataStatus::Ok);
        assert_eq!(
            fata_equivalent(m, det, &mut equal, ptr::null_mut()),
            FataStatus::Ok
        );
        assert!(equal);

        for h in [m, again, comp, meet, det] {
            fata_automaton_free(h);
        }
    }
}

#[test]
fn files() {
    let dir = tempfile::tempdir().unwrap();
    let path = c(dir.path().join("p.fta").to_str().unwrap());
    let m = parse(PARITY);
    unsafe {
        assert_eq!(fata_automaton_save(m, path.as_ptr()), FataStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(
            fata_automaton_load(path.as_ptr(), &mut back),
            FataStatus::Ok
        );
        assert_eq!(fata_automaton_num_states(back), 2);
        fata_automaton_free(back);
        fata_automaton_free(m);
        let missing = c(dir.path().join("none.fta").to_str().unwrap());
        let mut out = ptr::null_mut();
        assert_eq!(
            fata_automaton_load(missing.as_ptr(), &mut out),
            FataStatus::Io
        );
        assert!(out.is_null());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = c(&PARITY.replace("plus o o e\n", ""));
        assert_eq!(
            fata_automaton_parse(bad.as_ptr(), &mut out),
            FataStatus::Invalid
        );
        assert!(
            last_error().contains("missing plus entry"),
            "{}",
            last_error()
        );
        assert_eq!(
            fata_automaton_parse(ptr::null(), &mut out),
            FataStatus::NullArgument
        );

        let m = parse(PARITY);
        let mut accepted = false;
        let f = c("b");
        assert_eq!(
            fata_member(m, f.as_ptr(), &mut accepted),
            FataStatus::Syntax
        );
        assert!(last_error().contains("unknown symbol"));
        let f = c("a(");
        assert_eq!(
            fata_member(m, f.as_ptr(), &mut accepted),
            FataStatus::Syntax
        );
        let f = c("a");
        assert_eq!(
            fata_member(m, f.as_ptr(), ptr::null_mut()),
            FataStatus::NullArgument
        );
        assert_eq!(fata_member(m, f.as_ptr(), &mut accepted), FataStatus::Ok);
        assert_eq!(last_error(), "");

        let other = parse(
            &PARITY
                .replace("alphabet a", "alphabet b")
                .replace("delta a", "delta b"),
        );
        let mut equal = false;
        assert_eq!(
            fata_equivalent(m, other, &mut equal, ptr::null_mut()),
            FataStatus::AlphabetMismatch
        );
        fata_automaton_free(other);
        fata_automaton_free(m);
        fata_automaton_free(ptr::null_mut());
        fata_string_free(ptr::null_mut());
        assert_eq!(fata_automaton_num_states(ptr::null()), 0);
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fata.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "fata_automaton_load",
        "fata_is_empty",
        "fata_string_free",
        "FATA_STATUS_CAP_EXCEEDED",
    ] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}

/// Compiles a small C program against the header and the shared library,
/// when a C compiler and the library are available.
#[test]
fn c_program_links_and_runs() {
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libfata_ffi.so");
    if !lib.exists() {
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let Ok(status) = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&profile_dir)
        .args(["-lfata_ffi", "-o"])
        .arg(&exe)
        .status()
    else {
        return;
    };
    assert!(status.success());
    let out = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &profile_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
