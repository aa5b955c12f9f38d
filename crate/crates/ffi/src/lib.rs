//! C ABI over `rpic-core`.
//!
//! Jobs go in as the same JSON the `rpic` binary reads and come back as an
//! opaque report handle. Strings returned by the library are owned by the
//! caller and released with [`rpic_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rpic_core::cli::{run, Command, Format, JobSpec, Options, Report};
use rpic_core::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Verification = 5,
    NotApplicable = 6,
    Panic = 7,
}

/// Opaque result of one job.
pub struct RpicReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> RpicStatus {
    match e {
        Error::Parse(_) => RpicStatus::Parse,
        Error::Verification(_) => RpicStatus::Verification,
        _ => RpicStatus::Validation,
    }
}

fn guarded(f: impl FnOnce() -> RpicStatus) -> RpicStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            RpicStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RpicStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(RpicStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        RpicStatus::InvalidUtf8
    })
}

/// Runs a job.
///
/// `command` may be null, in which case the spec must name one. On success
/// `*out` receives a report to be released with [`rpic_report_free`].
///
/// # Safety
/// `spec_json` must be a NUL-terminated string, `command` null or
/// NUL-terminated, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpic_run(
    spec_json: *const c_char,
    command: *const c_char,
    verify: bool,
    out: *mut *mut RpicReport,
) -> RpicStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return RpicStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let spec = match read_str(spec_json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let command = if command.is_null() {
            None
        } else {
            match read_str(command).map(str::parse::<Command>) {
                Ok(Ok(c)) => Some(c),
                Ok(Err(e)) => {
                    set_error(e.to_string());
                    return status_of(&e);
                }
                Err(s) => return s,
            }
        };
        let opts = Options {
            verify,
            ..Options::default()
        };
        match JobSpec::parse(spec).and_then(|job| run(&job, command, &opts)) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(RpicReport { inner: report }));
                RpicStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// # Safety
/// `report` must be null or a pointer obtained from [`rpic_run`], freed once.
#[no_mangle]
pub unsafe extern "C" fn rpic_report_free(report: *mut RpicReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

fn render(report: *const RpicReport, format: Format) -> *mut c_char {
    if report.is_null() {
        set_error("null report");
        return ptr::null_mut();
    }
    let text = unsafe { &*report }.inner.render(format);
    CString::new(text.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// The report as JSON (schema version 1). Null on error.
///
/// # Safety
/// `report` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn rpic_report_to_json(report: *const RpicReport) -> *mut c_char {
    render(report, Format::Json)
}

/// The report as human-readable text. Null on error.
///
/// # Safety
/// `report` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn rpic_report_to_text(report: *const RpicReport) -> *mut c_char {
    render(report, Format::Text)
}

/// Free rank of a `picard` or `weight-image` report.
///
/// # Safety
/// `report` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpic_report_free_rank(
    report: *const RpicReport,
    out: *mut usize,
) -> RpicStatus {
    if report.is_null() || out.is_null() {
        set_error("null argument");
        return RpicStatus::NullPointer;
    }
    let report = &*report;
    let result = &report.inner.json["result"];
    let rank = result
        .get("free_rank")
        .or_else(|| result.get("rank"))
        .and_then(|v| v.as_u64());
    match rank {
        Some(k) => {
            *out = k as usize;
            RpicStatus::Ok
        }
        None => {
            set_error("report has no free rank");
            RpicStatus::NotApplicable
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rpic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rpic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn rpic_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
