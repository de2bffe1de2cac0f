use std::ffi::{CStr, CString};
use std::ptr;

use deligne_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dl_string_free(s) };
    out
}

fn last_error() -> String {
    let p = dl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> *mut DlTask {
    let text = CString::new(text).unwrap();
    let mut task = ptr::null_mut();
    assert_eq!(unsafe { dl_task_parse(text.as_ptr(), &mut task) }, DlStatus::Ok);
    task
}

#[test]
fn pair_through_handle() {
    let task = parse("base = \"Q[t]\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 - t*x1^2\"), (1, \"x0 - x1\")]\n");
    let cmd = CString::new("pair").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dl_run(task, cmd.as_ptr(), &mut out) }, DlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["pairing_section"], "1 - t");
    assert_eq!(v["normalization"], "sylvester");
    unsafe { dl_task_free(task) };
}

#[test]
fn parse_errors_are_reported() {
    let text = CString::new("sections = [(2, \"x0 - x1\")]").unwrap();
    let mut task = ptr::null_mut();
    assert_eq!(unsafe { dl_task_parse(text.as_ptr(), &mut task) }, DlStatus::InputError);
    assert!(task.is_null());
    assert!(last_error().contains("HomogeneityError"));
}

#[test]
fn null_and_utf8_arguments() {
    let mut task = ptr::null_mut();
    assert_eq!(unsafe { dl_task_parse(ptr::null(), &mut task) }, DlStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { dl_task_parse(bad.as_ptr().cast(), &mut task) }, DlStatus::Utf8);
    let cmd = CString::new("pair").unwrap();
    assert_eq!(unsafe { dl_run(ptr::null(), cmd.as_ptr(), ptr::null_mut()) }, DlStatus::NullPointer);
    unsafe {
        dl_task_free(ptr::null_mut());
        dl_string_free(ptr::null_mut());
    }
}

#[test]
fn seeded_suite_is_deterministic() {
    let suite = CString::new("multiadditivity").unwrap();
    let run = || {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { dl_verify_suite(suite.as_ptr(), 7, 20, &mut out) }, DlStatus::Ok);
        take(out)
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["instances"], 20);
}

#[test]
fn unknown_subcommand_and_missing_task() {
    let mut out = ptr::null_mut();
    let cmd = CString::new("verify bogus").unwrap();
    assert_eq!(unsafe { dl_run(ptr::null(), cmd.as_ptr(), &mut out) }, DlStatus::InputError);
    assert!(out.is_null());
    let cmd = CString::new("pair").unwrap();
    assert_eq!(unsafe { dl_run(ptr::null(), cmd.as_ptr(), &mut out) }, DlStatus::InputError);
    assert!(last_error().contains("needs a task file"));
}

#[test]
fn failed_check_still_returns_report() {
    // coarse grid with a tolerance no quadrature can meet
    let task = parse("base = \"C\"\nfamily = \"P1\"\nsections = [(1, \"x0 - 2*x1\"), (2, \"x0^2 + x1^2\")]\nnodes_theta = 16\nnodes_phi = 16\ntolerance = 1e-15\nlambda = 3\n");
    let cmd = CString::new("verify metric_d1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dl_run(task, cmd.as_ptr(), &mut out) }, DlStatus::VerificationFailed);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "fail");
    unsafe { dl_task_free(task) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(dl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
