//! C interface. Tasks live behind an opaque `DlTask` handle; results come
//! back as JSON strings owned by the library and released with
//! `dl_string_free`. Errors are status codes plus a per-thread message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use deligne::cli::{self, RunOptions, Subcommand};
use deligne::task::{parse_task, TaskFile};
use deligne::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    /// The verification ran and at least one check failed; the JSON report
    /// is still returned.
    VerificationFailed = 1,
    /// The input was rejected; see `dl_last_error_message`.
    InputError = 2,
    NullPointer = 3,
    Utf8 = 4,
    Internal = 5,
}

/// A parsed task file.
pub struct DlTask {
    task: TaskFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn input_error(e: &Error) -> DlStatus {
    set_error(cli::render(&cli::error_document(e)).trim_end());
    DlStatus::InputError
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DlStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(DlStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DlStatus::Utf8
    })
}

fn guarded(f: impl FnOnce() -> DlStatus) -> DlStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        DlStatus::Internal
    })
}

fn hand_out(json: String, out: *mut *mut c_char) -> DlStatus {
    match CString::new(json) {
        Ok(s) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = s.into_raw() };
            DlStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            DlStatus::Internal
        }
    }
}

fn finish(cmd: &Subcommand, task: Option<&TaskFile>, opts: &RunOptions, out: *mut *mut c_char) -> DlStatus {
    match cli::run(cmd, task, opts) {
        Ok(o) => match hand_out(o.to_json(), out) {
            DlStatus::Ok if o.exit_code == cli::EXIT_VERIFICATION_FAILED => DlStatus::VerificationFailed,
            s => s,
        },
        Err(e) => input_error(&e),
    }
}

/// Parses task text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_task_parse(text: *const c_char, out: *mut *mut DlTask) -> DlStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return DlStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_task(text) {
            Ok(task) => {
                *out = Box::into_raw(Box::new(DlTask { task }));
                DlStatus::Ok
            }
            Err(e) => input_error(&e),
        }
    })
}

/// Releases a handle from `dl_task_parse`. Null is ignored.
///
/// # Safety
/// `task` must come from `dl_task_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dl_task_free(task: *mut DlTask) {
    if !task.is_null() {
        drop(Box::from_raw(task));
    }
}

/// Runs `subcommand` (`"norm"`, `"pair"`, `"intersect"`, `"metric"` or
/// `"verify <suite>"`) on `task`, which may be null for `verify`. The JSON
/// document is stored in `*out_json` on `Ok` and `VerificationFailed`.
///
/// # Safety
/// `task` must be null or a live handle, `subcommand` a NUL-terminated string
/// and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_run(
    task: *const DlTask,
    subcommand: *const c_char,
    out_json: *mut *mut c_char,
) -> DlStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null output pointer");
            return DlStatus::NullPointer;
        }
        *out_json = ptr::null_mut();
        let cmd = match read_str(subcommand).map(str::parse::<Subcommand>) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) => return input_error(&e),
            Err(s) => return s,
        };
        let task = task.as_ref().map(|t| &t.task);
        finish(&cmd, task, &RunOptions::default(), out_json)
    })
}

/// Runs a seeded property suite. `count = 0` selects the suite default.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_verify_suite(
    suite: *const c_char,
    seed: u64,
    count: usize,
    out_json: *mut *mut c_char,
) -> DlStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null output pointer");
            return DlStatus::NullPointer;
        }
        *out_json = ptr::null_mut();
        let cmd = match read_str(suite).map(|s| Subcommand::parse("verify", Some(s))) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) => return input_error(&e),
            Err(s) => return s,
        };
        let opts = RunOptions {
            seed: Some(seed),
            count: (count > 0).then_some(count),
        };
        finish(&cmd, None, &opts, out_json)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
