//! C ABI for the verification library.
//!
//! Reports are produced behind an opaque handle and read out as text or
//! JSON; every string returned by this library must be released with
//! [`totalk_string_free`], every report set with [`totalk_reports_free`].

use libc::c_char;
use std::ffi::{CStr, CString};
use std::str::FromStr;

use totalk::cli::{parse_input, run_doc};
use totalk::verify::{run_all, Case, VerifyConfig, VerifyReport};

/// Status codes mirroring the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalkStatus {
    /// Every check passed.
    Ok = 0,
    /// The run finished but a verification failed (see the report).
    VerificationFailed = 1,
    /// Malformed input (unparseable case name, document, or matrix).
    InvalidInput = 2,
    /// A null pointer or non-UTF-8 string was passed.
    InvalidArgument = 3,
}

/// Opaque report set.
pub struct TotalkReports {
    reports: Vec<VerifyReport>,
}

fn cstr_in<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    // SAFETY: the caller passes a NUL-terminated string; lifetime is bounded
    // by the call.
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).expect("interior NULs removed").into_raw()
}

/// Run the built-in verification suite.
///
/// `case` is one of `de`, `family`, `gamma`, `refute`, `beta-auto`, `cones`,
/// `all`; `max_coeff` and `window` of 0 select the defaults. On success
/// (`Ok` or `VerificationFailed`), `out` receives a report handle.
///
/// # Safety
/// `case` must be NUL-terminated or null (null selects `all`); `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn totalk_verify_run(
    case: *const c_char,
    max_coeff: u32,
    window: u32,
    out: *mut *mut TotalkReports,
) -> TotalkStatus {
    if out.is_null() {
        return TotalkStatus::InvalidArgument;
    }
    let case = if case.is_null() {
        Case::All
    } else {
        let Some(text) = cstr_in(case) else {
            return TotalkStatus::InvalidArgument;
        };
        match Case::from_str(text) {
            Ok(c) => c,
            Err(_) => return TotalkStatus::InvalidInput,
        }
    };
    let defaults = VerifyConfig::default();
    let config = VerifyConfig {
        max_coeff: if max_coeff == 0 { defaults.max_coeff } else { max_coeff as u64 },
        window: if window == 0 { defaults.window } else { window as u64 },
    };
    match run_all(case, config) {
        Ok(reports) => {
            let passed = reports.iter().all(VerifyReport::passed);
            unsafe {
                *out = Box::into_raw(Box::new(TotalkReports { reports }));
            }
            if passed {
                TotalkStatus::Ok
            } else {
                TotalkStatus::VerificationFailed
            }
        }
        Err(_) => TotalkStatus::InvalidInput,
    }
}

/// Parse a JSON input document and run its assertions.
///
/// # Safety
/// `document` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn totalk_check_document(
    document: *const c_char,
    out: *mut *mut TotalkReports,
) -> TotalkStatus {
    if out.is_null() {
        return TotalkStatus::InvalidArgument;
    }
    let Some(text) = cstr_in(document) else {
        return TotalkStatus::InvalidArgument;
    };
    let doc = match parse_input(text) {
        Ok(d) => d,
        Err(_) => return TotalkStatus::InvalidInput,
    };
    match run_doc(&doc) {
        Ok(report) => {
            let passed = report.passed();
            unsafe {
                *out = Box::into_raw(Box::new(TotalkReports { reports: vec![report] }));
            }
            if passed {
                TotalkStatus::Ok
            } else {
                TotalkStatus::VerificationFailed
            }
        }
        Err(_) => TotalkStatus::InvalidInput,
    }
}

/// Did every report in the set pass?
///
/// # Safety
/// `reports` must be a live handle from this library (or null, which counts
/// as failed).
#[no_mangle]
pub unsafe extern "C" fn totalk_reports_passed(reports: *const TotalkReports) -> bool {
    if reports.is_null() {
        return false;
    }
    unsafe { &*reports }.reports.iter().all(VerifyReport::passed)
}

/// Number of reports in the set.
///
/// # Safety
/// `reports` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn totalk_reports_len(reports: *const TotalkReports) -> usize {
    if reports.is_null() {
        return 0;
    }
    unsafe { &*reports }.reports.len()
}

/// The byte-deterministic JSON rendering of the report set.
///
/// # Safety
/// `reports` must be a live handle. Release the string with
/// [`totalk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn totalk_reports_to_json(reports: *const TotalkReports) -> *mut c_char {
    if reports.is_null() {
        return std::ptr::null_mut();
    }
    string_out(totalk::cli::emit_json(&unsafe { &*reports }.reports))
}

/// The line-oriented text rendering of the report set.
///
/// # Safety
/// `reports` must be a live handle. Release the string with
/// [`totalk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn totalk_reports_to_text(reports: *const TotalkReports) -> *mut c_char {
    if reports.is_null() {
        return std::ptr::null_mut();
    }
    string_out(totalk::cli::emit_text(&unsafe { &*reports }.reports))
}

/// Release a report set.
///
/// # Safety
/// `reports` must be a handle from this library, not yet freed; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn totalk_reports_free(reports: *mut TotalkReports) {
    if !reports.is_null() {
        drop(unsafe { Box::from_raw(reports) });
    }
}

/// Smith normal form of a JSON matrix (an array of rows, or an object with
/// an `entries` field); returns the JSON result described in the library
/// documentation, or null on malformed input.
///
/// # Safety
/// `matrix_json` must be NUL-terminated. Release the result with
/// [`totalk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn totalk_snf_json(matrix_json: *const c_char) -> *mut c_char {
    let Some(text) = cstr_in(matrix_json) else {
        return std::ptr::null_mut();
    };
    let Ok(value) = serde_parse(text) else {
        return std::ptr::null_mut();
    };
    string_out(value)
}

fn serde_parse(text: &str) -> Result<String, ()> {
    // reuse the library SNF on a parsed matrix
    let value: serde_json::Value = serde_json::from_str(text).map_err(|_| ())?;
    let rows = match &value {
        serde_json::Value::Array(_) => &value,
        serde_json::Value::Object(map) => map.get("entries").ok_or(())?,
        _ => return Err(()),
    };
    let serde_json::Value::Array(rows) = rows else { return Err(()) };
    let mut data: Vec<Vec<num_bigint::BigInt>> = Vec::new();
    for row in rows {
        let serde_json::Value::Array(cells) = row else { return Err(()) };
        let mut out = Vec::new();
        for cell in cells {
            let n = match cell {
                serde_json::Value::Number(n) => n.as_i64().map(num_bigint::BigInt::from),
                serde_json::Value::String(s) => s.parse().ok(),
                _ => None,
            };
            out.push(n.ok_or(())?);
        }
        data.push(out);
    }
    let cols = data.first().map(Vec::len).unwrap_or(0);
    if data.iter().any(|r| r.len() != cols) {
        return Err(());
    }
    let m = if data.is_empty() {
        totalk::abgroup::IntMatrix::zero(0, 0)
    } else {
        totalk::abgroup::IntMatrix::from_rows(data)
    };
    let snf = totalk::abgroup::smith_normal_form(&m);
    let to_rows = |m: &totalk::abgroup::IntMatrix| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
    };
    let out = serde_json::json!({
        "diagonal": snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "u": to_rows(&snf.u),
        "s": to_rows(&snf.s),
        "v": to_rows(&snf.v),
    });
    Ok(out.to_string())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `totalk_*` function and not yet freed;
/// null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn totalk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
