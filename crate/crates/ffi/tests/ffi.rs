use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use tiltcore_ffi::*;

fn fixture(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = tf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn open(name: &str) -> *mut TfWorkspace {
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { tf_workspace_open(fixture(name).as_ptr(), &mut ws) }, TfStatus::Ok);
    ws
}

fn run(ws: *mut TfWorkspace, cmd: &str) -> (TfStatus, String) {
    let c = CString::new(cmd).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { tf_run(ws, c.as_ptr(), ptr::null(), &mut out) };
    let json = if out.is_null() {
        String::new()
    } else {
        let j = unsafe { CStr::from_ptr(out) }.to_string_lossy().into_owned();
        unsafe { tf_string_free(out) };
        j
    };
    (s, json)
}

#[test]
fn run_and_verify_round_trip() {
    let ws = open("a3r.tilt");
    let (s, json) = run(ws, "filter-jms S2");
    assert_eq!(s, TfStatus::Ok);
    let c = CString::new(json.clone()).unwrap();
    let mut problems = ptr::null_mut();
    assert_eq!(unsafe { tf_verify(c.as_ptr(), &mut problems) }, TfStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(problems) }.to_str().unwrap(), "[]");
    unsafe { tf_string_free(problems) };

    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["results"][0]["record"]["factors"][0]["dims"][1] = 7.into();
    let c = CString::new(v.to_string()).unwrap();
    assert_eq!(unsafe { tf_verify(c.as_ptr(), ptr::null_mut()) }, TfStatus::VerifyFailed);
    assert!(last_error().contains("checks failed"));
    unsafe { tf_workspace_free(ws) };
}

#[test]
fn outcomes_map_to_status() {
    let bad = open("a3r_bad.tilt");
    let (s, json) = run(bad, "validate-tilting");
    assert_eq!(s, TfStatus::Failures);
    assert!(json.contains("not_tilting"));
    unsafe { tf_workspace_free(bad) };

    let ws = open("a3r.tilt");
    let (s, json) = run(ws, "phi nosuch");
    assert_eq!(s, TfStatus::Input);
    assert!(json.is_empty());
    assert!(last_error().contains("nosuch"));
    let (s, _) = run(ws, "no-such-command");
    assert_eq!(s, TfStatus::Input);
    unsafe { tf_workspace_free(ws) };
}

#[test]
fn parse_from_text_and_options() {
    let src = std::fs::read_to_string(fixture("a2.tilt").to_str().unwrap()).unwrap();
    let c = CString::new(src).unwrap();
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { tf_workspace_parse(c.as_ptr(), &mut ws) }, TfStatus::Ok);
    let cmd = CString::new("check-lemma L20").unwrap();
    let opts = TfOptions { enum_cap: 0, perp_bound: 4, res_cap: 0, sample_dim: 3 };
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tf_run(ws, cmd.as_ptr(), &opts, &mut out) }, TfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    assert_eq!(v["caps"]["perp_bound"], 4);
    unsafe { tf_string_free(out) };
    unsafe { tf_workspace_free(ws) };

    let bad = CString::new("field F2\nquiver\nbogus\n").unwrap();
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { tf_workspace_parse(bad.as_ptr(), &mut ws) }, TfStatus::Input);
    assert!(ws.is_null());
    assert!(last_error().contains("3:"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { tf_workspace_parse(ptr::null(), &mut ws) }, TfStatus::NullArgument);
    assert_eq!(unsafe { tf_workspace_open(ptr::null(), ptr::null_mut()) }, TfStatus::NullArgument);
    let mut out = ptr::null_mut();
    let cmd = CString::new("phi S1").unwrap();
    assert_eq!(unsafe { tf_run(ptr::null(), cmd.as_ptr(), ptr::null(), &mut out) }, TfStatus::NullArgument);
    unsafe { tf_workspace_free(ptr::null_mut()) };
    unsafe { tf_string_free(ptr::null_mut()) };
    assert!(!unsafe { CStr::from_ptr(tf_version()) }.to_str().unwrap().is_empty());
}
