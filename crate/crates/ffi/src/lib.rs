//! C ABI over the quasi-double kernel. Objects cross the boundary as opaque
//! handles owned by the caller and released with the matching `*_free`.
//! Every fallible call returns a `QdStatus`; the message of the last failure
//! on the calling thread is available from `qd_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quasi_double::cli_io::{self, LoadedAlgebra};
use quasi_double::double::{build_double, verify_double, DoubleAlgebra};
use quasi_double::quasi_hopf::VerifyOptions;
use quasi_double::report::Report;
use quasi_double::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    /// A report was produced and at least one check failed.
    CheckFailed = 1,
    /// Unreadable input: I/O, JSON or an invalid group table or cocycle.
    ParseError = 2,
    /// The input is well formed but violates a precondition or a structural check.
    Precondition = 3,
    /// A null pointer, non-UTF-8 string or non-positive tolerance.
    InvalidArgument = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

pub struct QdAlgebra {
    inner: LoadedAlgebra,
}

pub struct QdDouble {
    inner: DoubleAlgebra,
}

pub struct QdReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QdStatus {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Parse(_) => QdStatus::ParseError,
        _ => QdStatus::Precondition,
    }
}

/// Runs `f` behind a panic guard, recording the error message on failure.
fn guard(f: impl FnOnce() -> Result<QdStatus, (QdStatus, String)>) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside the kernel");
            QdStatus::Internal
        }
    }
}

fn fail(e: Error) -> (QdStatus, String) {
    (status_of(&e), e.to_string())
}

fn invalid(msg: &str) -> (QdStatus, String) {
    (QdStatus::InvalidArgument, msg.to_string())
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QdStatus, String)> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

fn options(tol: f64) -> Result<VerifyOptions, (QdStatus, String)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(invalid("tolerance must be positive and finite"));
    }
    Ok(VerifyOptions { tol, ..Default::default() })
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn put<T>(out: *mut *mut T, v: T) -> QdStatus {
    *out = Box::into_raw(Box::new(v));
    QdStatus::Ok
}

fn report_status(r: &Report) -> QdStatus {
    if r.passed() {
        QdStatus::Ok
    } else {
        QdStatus::CheckFailed
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by `qd_report_jsonl`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in algebra (`cz2`, `cs3`, `h4`, `fun_z2_omega`, ...) or an
/// algebra file by path.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qd_algebra_load(name: *const c_char, out: *mut *mut QdAlgebra) -> QdStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        let a = cli_io::load_algebra(read_str(name, "name")?).map_err(fail)?;
        Ok(put(out, QdAlgebra { inner: a }))
    })
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle from `qd_algebra_load`.
#[no_mangle]
pub unsafe extern "C" fn qd_algebra_dim(a: *const QdAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.qha.dim())
}

/// Whether the algebra carries an R-matrix.
///
/// # Safety
/// `a` must be null or a live handle from `qd_algebra_load`.
#[no_mangle]
pub unsafe extern "C" fn qd_algebra_has_r(a: *const QdAlgebra) -> bool {
    a.as_ref().is_some_and(|a| a.inner.qt.is_some())
}

/// # Safety
/// `a` must be null or a live handle from `qd_algebra_load`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_algebra_free(a: *mut QdAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Quasi-Hopf suite, plus the quasitriangular suite when R is present.
/// Returns `Ok` or `CheckFailed`; the report is written in both cases.
///
/// # Safety
/// `a` must be a live algebra handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qd_verify(a: *const QdAlgebra, tol: f64, out: *mut *mut QdReport) -> QdStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| invalid("algebra is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        let r = cli_io::verify_algebra(&a.inner, options(tol)?);
        let s = report_status(&r);
        put(out, QdReport { inner: r });
        Ok(s)
    })
}

/// Builds D(G) from a quasi-Hopf algebra with ε(α) = 1.
///
/// # Safety
/// `a` must be a live algebra handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qd_double_build(a: *const QdAlgebra, tol: f64, out: *mut *mut QdDouble) -> QdStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| invalid("algebra is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        let d = build_double(&a.inner.qha, options(tol)?).map_err(fail)?;
        Ok(put(out, QdDouble { inner: d }))
    })
}

/// Dimension of D(G), 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle from `qd_double_build`.
#[no_mangle]
pub unsafe extern "C" fn qd_double_dim(d: *const QdDouble) -> usize {
    d.as_ref().map_or(0, |d| d.inner.d_space().dim())
}

/// Full verification suite of a built double.
///
/// # Safety
/// `d` must be a live double handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qd_double_verify(d: *const QdDouble, tol: f64, out: *mut *mut QdReport) -> QdStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| invalid("double is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        let r = verify_double(&d.inner, options(tol)?);
        let s = report_status(&r);
        put(out, QdReport { inner: r });
        Ok(s)
    })
}

/// # Safety
/// `d` must be null or a live handle from `qd_double_build`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_double_free(d: *mut QdDouble) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// D^ω(G) checked against the generic double of Fun(G)^ω. `group` is `z2`,
/// `zN`, `s3` or a path; `cocycle` is `trivial`, `standard:p` or a path.
///
/// # Safety
/// `group` and `cocycle` must be NUL-terminated strings; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qd_twisted_double(group: *const c_char, cocycle: *const c_char, tol: f64, out: *mut *mut QdReport) -> QdStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        let g = cli_io::load_group(read_str(group, "group")?).map_err(fail)?;
        let w = cli_io::load_cocycle(read_str(cocycle, "cocycle")?, &g).map_err(fail)?;
        let (_, r) = cli_io::twisted_pipeline(&g, &w, options(tol)?).map_err(fail)?;
        let s = report_status(&r);
        put(out, QdReport { inner: r });
        Ok(s)
    })
}

/// Whether every gated check passed; false for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qd_report_passed(r: *const QdReport) -> bool {
    r.as_ref().is_some_and(|r| r.inner.passed())
}

/// Number of entries (checks and notes) in the report.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qd_report_len(r: *const QdReport) -> usize {
    r.as_ref().map_or(0, |r| r.inner.checks.len())
}

/// Largest residual in the report.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qd_report_max_residual(r: *const QdReport) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.inner.max_residual())
}

/// The report as JSON lines; release with `qd_string_free`. Null on a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qd_report_jsonl(r: *const QdReport) -> *mut c_char {
    r.as_ref()
        .and_then(|r| CString::new(r.inner.to_jsonl()).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `r` must be null or a live report handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_report_free(r: *mut QdReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
