//! C interface to `tiltcore`.
//!
//! Every function returns a [`TfStatus`]. On anything other than `TF_STATUS_OK`
//! (and the report outcomes `FAILURES`, `UNKNOWN`), [`tf_last_error`] holds a
//! message for the calling thread. Strings handed out by the library are freed
//! with [`tf_string_free`], workspaces with [`tf_workspace_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use tiltcore::io::{error_exit_code, exit, parse_str, parse_workspace, run_command, verify_report, Command, Options, Report, Workspace};
use tiltcore::Error;

/// Result codes; the values match the exit codes of the `tiltfilt` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    /// The command ran and some check failed.
    Failures = 1,
    /// The command ran and some verdict is unknown at the configured bounds.
    Unknown = 2,
    Input = 3,
    CapExceeded = 4,
    VerifyFailed = 5,
    Internal = 6,
    NullArgument = 7,
}

impl TfStatus {
    fn from_code(c: i32) -> TfStatus {
        match c {
            exit::OK => TfStatus::Ok,
            exit::FAILURES => TfStatus::Failures,
            exit::UNKNOWN => TfStatus::Unknown,
            exit::INPUT => TfStatus::Input,
            exit::CAP => TfStatus::CapExceeded,
            exit::VERIFY => TfStatus::VerifyFailed,
            _ => TfStatus::Internal,
        }
    }
}

/// A parsed workspace. Opaque.
pub struct TfWorkspace {
    ws: Workspace,
    origin: String,
}

/// Search bounds for [`tf_run`]; zero means the workspace default.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TfOptions {
    pub enum_cap: usize,
    pub perp_bound: usize,
    pub res_cap: usize,
    pub sample_dim: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: &Error) -> TfStatus {
    set_error(&e.to_string());
    TfStatus::from_code(error_exit_code(e))
}

fn guarded(f: impl FnOnce() -> TfStatus) -> TfStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        set_error(&format!("internal error: {msg}"));
        TfStatus::Internal
    })
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, TfStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(TfStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not UTF-8"));
        TfStatus::Input
    })
}

fn hand_out(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn opt(x: usize) -> Option<usize> {
    (x > 0).then_some(x)
}

/// Parses workspace text. On success `*out` owns a new workspace.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_workspace_parse(source: *const c_char, out: *mut *mut TfWorkspace) -> TfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return TfStatus::NullArgument;
        }
        let s = try_status!(text(source, "source"));
        match parse_str(s) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(TfWorkspace { ws, origin: "<memory>".into() }));
                TfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Reads and parses a workspace file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_workspace_open(path: *const c_char, out: *mut *mut TfWorkspace) -> TfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return TfStatus::NullArgument;
        }
        let p = try_status!(text(path, "path"));
        match parse_workspace(Path::new(p)) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(TfWorkspace { ws, origin: p.to_string() }));
                TfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `ws` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tf_workspace_free(ws: *mut TfWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Runs one command, given as its words separated by spaces
/// (`"filter-jms S2"`, `"check-lemma all"`). On any status below
/// `TF_STATUS_INPUT`, `*report_json` receives the JSON report and the status
/// reflects its outcome.
///
/// # Safety
/// `ws` must be a live workspace, `command` a NUL-terminated string, `options`
/// null or valid, and `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_run(
    ws: *const TfWorkspace,
    command: *const c_char,
    options: *const TfOptions,
    report_json: *mut *mut c_char,
) -> TfStatus {
    guarded(|| {
        if ws.is_null() || report_json.is_null() {
            set_error("workspace or report_json is null");
            return TfStatus::NullArgument;
        }
        *report_json = ptr::null_mut();
        let line = try_status!(text(command, "command"));
        let words: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        let o = if options.is_null() { TfOptions::default() } else { *options };
        let opts = Options { enum_cap: opt(o.enum_cap), perp_bound: opt(o.perp_bound), res_cap: opt(o.res_cap), sample_dim: opt(o.sample_dim) };
        let w = &*ws;
        let report = match Command::parse(&words).and_then(|cmd| run_command(&w.ws, &w.origin, &cmd, &opts)) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        *report_json = hand_out(report.to_json());
        TfStatus::from_code(report.exit_code(false))
    })
}

/// Re-checks a JSON report. Returns `TF_STATUS_OK` when every certificate
/// holds and `TF_STATUS_VERIFY_FAILED` otherwise; if `problems_json` is not
/// null it receives a JSON array of the problems found.
///
/// # Safety
/// `report_json` must be a NUL-terminated string; `problems_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn tf_verify(report_json: *const c_char, problems_json: *mut *mut c_char) -> TfStatus {
    guarded(|| {
        if !problems_json.is_null() {
            *problems_json = ptr::null_mut();
        }
        let s = try_status!(text(report_json, "report_json"));
        let outcome = match Report::from_json(s).and_then(|r| verify_report(&r)) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        if !problems_json.is_null() {
            *problems_json = hand_out(serde_json::to_string(&outcome.problems).expect("strings serialize"));
        }
        if outcome.passed() {
            TfStatus::Ok
        } else {
            set_error(&format!("{} of {} checks failed", outcome.problems.len(), outcome.checked));
            TfStatus::VerifyFailed
        }
    })
}

/// Message for the last error on this thread, or null. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
