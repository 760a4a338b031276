//! C interface to the axial-curvature pipeline.
//!
//! Every function returns an [`AxcStatus`]; on failure the message is
//! available from [`axc_last_error`] on the same thread. Handles are opaque
//! and must be released with the matching `*_free` function. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`axc_string_free`].

use axialcurv::jetcore::{parse_germ, PolyMapGerm};
use axialcurv::locus::{sample_locus, SampleGrid};
use axialcurv::report::AnalysisReport;
use axialcurv::tol::Tol;
use axialcurv::verify::CheckStatus;
use axialcurv::{Analysis, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    NotGerm = 4,
    Corank = 5,
    Unsupported = 6,
    Numerical = 7,
    OutOfRange = 8,
    BufferTooSmall = 9,
    VerifyFailed = 10,
    Panic = 11,
}

/// Parsed germ.
pub struct AxcGerm(PolyMapGerm);

/// Completed analysis with its report.
pub struct AxcReport {
    analysis: Analysis,
    report: AnalysisReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: AxcStatus, msg: impl Into<String>) -> AxcStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> AxcStatus {
    match e {
        Error::Schema(_) => AxcStatus::Schema,
        Error::NotGerm { .. } => AxcStatus::NotGerm,
        Error::Corank { .. } => AxcStatus::Corank,
        Error::Unsupported { .. } => AxcStatus::Unsupported,
        _ => AxcStatus::Numerical,
    }
}

fn guard(f: impl FnOnce() -> AxcStatus) -> AxcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(AxcStatus::Ok) => {
            set_error("");
            AxcStatus::Ok
        }
        Ok(s) => s,
        Err(_) => fail(AxcStatus::Panic, "internal panic"),
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> AxcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            AxcStatus::Ok
        }
        Err(_) => fail(AxcStatus::InvalidUtf8, "string contains NUL"),
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn axc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a germ description (JSON, NUL-terminated).
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axc_germ_parse(json: *const c_char, out: *mut *mut AxcGerm) -> AxcStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(AxcStatus::InvalidUtf8, "input is not UTF-8");
        };
        match parse_germ(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(AxcGerm(g)));
                AxcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `germ` must come from [`axc_germ_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn axc_germ_free(germ: *mut AxcGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Runs the pipeline. A non-positive `tol` selects the default tolerance.
///
/// # Safety
/// `germ` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axc_analyze(germ: *const AxcGerm, tol: f64, out: *mut *mut AxcReport) -> AxcStatus {
    guard(|| {
        if germ.is_null() || out.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let tol = if tol > 0.0 && tol.is_finite() { Tol(tol) } else { Tol::default() };
        match Analysis::new(&(*germ).0, tol) {
            Ok(analysis) => {
                let report = AnalysisReport::new(&analysis);
                *out = Box::into_raw(Box::new(AxcReport { analysis, report }));
                AxcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must come from [`axc_analyze`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn axc_report_free(report: *mut AxcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Full report as JSON.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axc_report_to_json(report: *const AxcReport, out: *mut *mut c_char) -> AxcStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        give_string((*report).report.to_json(), out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn axc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of frame vectors, and so of axial directions.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axc_report_axial_count(report: *const AxcReport, out: *mut usize) -> AxcStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        *out = (*report).report.axial.len();
        AxcStatus::Ok
    })
}

/// Copies the axial curvatures of direction `i` (one-based) into `buf`.
/// `len` receives the number of values even when `cap` is too small.
///
/// # Safety
/// `buf` must hold `cap` doubles (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn axc_report_axial_values(
    report: *const AxcReport,
    i: usize,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> AxcStatus {
    guard(|| {
        if report.is_null() || len.is_null() || (buf.is_null() && cap > 0) {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        let axial = &(*report).report.axial;
        if i == 0 || i > axial.len() {
            return fail(AxcStatus::OutOfRange, format!("direction {i} not in 1..={}", axial.len()));
        }
        let vals = &axial[i - 1].values;
        *len = vals.len();
        if cap < vals.len() {
            return fail(AxcStatus::BufferTooSmall, format!("need {} values", vals.len()));
        }
        if !vals.is_empty() {
            ptr::copy_nonoverlapping(vals.as_ptr(), buf, vals.len());
        }
        AxcStatus::Ok
    })
}

/// Umbilic curvature; `defined` is false where it does not exist.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn axc_report_umbilic(report: *const AxcReport, value: *mut f64, defined: *mut bool) -> AxcStatus {
    guard(|| {
        if report.is_null() || value.is_null() || defined.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        let u = (*report).report.umbilic;
        *defined = u.is_some();
        *value = u.unwrap_or(0.0);
        AxcStatus::Ok
    })
}

/// Locus point cloud as CSV. Zero counts and an empty range select the defaults.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axc_locus_csv(
    report: *const AxcReport,
    thetas: usize,
    gammas: usize,
    gamma_lo: f64,
    gamma_hi: f64,
    out: *mut *mut c_char,
) -> AxcStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        let mut grid = SampleGrid::default();
        if thetas > 0 {
            grid.thetas = thetas;
        }
        if gammas > 0 {
            grid.gammas = gammas;
        }
        if gamma_lo < gamma_hi {
            grid.gamma_range = (gamma_lo, gamma_hi);
        }
        match sample_locus(&(*report).analysis.monge, &grid) {
            Ok(s) => give_string(s.to_csv(), out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Counts failed consistency checks; returns `VerifyFailed` when any failed.
///
/// # Safety
/// `report` must be a live handle; `failed` may be null.
#[no_mangle]
pub unsafe extern "C" fn axc_verify(report: *const AxcReport, failed: *mut usize) -> AxcStatus {
    guard(|| {
        if report.is_null() {
            return fail(AxcStatus::NullPointer, "null argument");
        }
        let checks = &(*report).report.checks;
        let n = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        if !failed.is_null() {
            *failed = n;
        }
        if n > 0 {
            let names: Vec<&str> = checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.name.as_str()).collect();
            return fail(AxcStatus::VerifyFailed, format!("failed checks: {}", names.join(", ")));
        }
        AxcStatus::Ok
    })
}
