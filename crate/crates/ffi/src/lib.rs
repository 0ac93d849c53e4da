//! C ABI over the `resonance` crate.
//!
//! Pairs and reports are opaque handles created and freed by this library.
//! Every fallible call returns an [`RlStatus`]; on failure the message is
//! kept per thread and read back with [`rl_last_error`]. Strings crossing the
//! boundary are NUL-terminated UTF-8, and JSON uses the same encodings as the
//! command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use resonance::continuation::SolverConfig;
use resonance::exterior::AnyPair;
use resonance::p1::{cross_check, SplitBundle};
use resonance::rng::stream;
use resonance::section::{random_rational_pair, solve_finite_section, SectionConfig, SectionReport};
use resonance::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Dimension = 4,
    ZeroInput = 5,
    Precondition = 6,
    Tolerance = 7,
    Internal = 8,
}

impl From<&Error> for RlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => RlStatus::Parse,
            Error::Dimension(_) | Error::ModeMismatch(..) => RlStatus::Dimension,
            Error::ZeroInput(_) => RlStatus::ZeroInput,
            Error::Precondition(_) | Error::DependentRows | Error::NotDecomposable => RlStatus::Precondition,
            Error::Tolerance { .. } => RlStatus::Tolerance,
        }
    }
}

/// Opaque pair `(V, K)`.
pub struct RlPair {
    inner: AnyPair,
}

/// Opaque solve report: the JSON text plus a few fields for direct access.
pub struct RlReport {
    json: CString,
    points: usize,
    expected: u64,
    transversal: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: RlStatus, msg: &str) -> RlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> RlStatus {
    fail((&e).into(), &e.to_string())
}

/// Runs `f`, turning panics into [`RlStatus::Internal`].
fn guard(f: impl FnOnce() -> RlStatus) -> RlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == RlStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(RlStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RlStatus> {
    if s.is_null() {
        return Err(fail(RlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(RlStatus::InvalidUtf8, "string is not UTF-8"))
}

fn boxed<T>(value: T, out: *mut *mut T) {
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message for the last failed call on this thread; empty after success.
/// Owned by the library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn rl_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version has no interior NUL"),
    };
    VERSION.as_ptr()
}

/// Parses a pair from JSON: `{"n": .., "field": "rational"|"complex", "K": [[..], ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_pair_from_json(json: *const c_char, out: *mut *mut RlPair) -> RlStatus {
    guard(|| {
        if out.is_null() {
            return fail(RlStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match AnyPair::from_json_str(text) {
            Ok(inner) => {
                boxed(RlPair { inner }, out);
                RlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Random rational pair with `dim K = dim_k`, reproducible from `seed`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_pair_random(n: usize, dim_k: usize, seed: u64, out: *mut *mut RlPair) -> RlStatus {
    guard(|| {
        if out.is_null() {
            return fail(RlStatus::NullPointer, "null output pointer");
        }
        match random_rational_pair(n, dim_k, &mut stream(seed, 0)) {
            Ok(p) => {
                boxed(RlPair { inner: AnyPair::Exact(p) }, out);
                RlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `pair` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rl_pair_free(pair: *mut RlPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Writes `n`, `dim K` and `dim K⊥` of the pair. Any output may be null.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_pair_dims(
    pair: *const RlPair,
    n: *mut usize,
    dim_k: *mut usize,
    dim_kperp: *mut usize,
) -> RlStatus {
    guard(|| {
        let Some(p) = pair.as_ref() else {
            return fail(RlStatus::NullPointer, "null pair");
        };
        for (dst, v) in [(n, p.inner.n()), (dim_k, p.inner.dim_k()), (dim_kperp, p.inner.dim_kperp())] {
            if !dst.is_null() {
                *dst = v;
            }
        }
        RlStatus::Ok
    })
}

/// Resonance membership of a point given as a JSON array in the pair's
/// scalar encoding. `rank_tol` is used for complex pairs only.
///
/// # Safety
/// `pair` must be a live handle, `point_json` NUL-terminated, `resonant`
/// valid; `rank` may be null.
#[no_mangle]
pub unsafe extern "C" fn rl_is_resonant(
    pair: *const RlPair,
    point_json: *const c_char,
    rank_tol: f64,
    resonant: *mut bool,
    rank: *mut usize,
) -> RlStatus {
    guard(|| {
        let Some(p) = pair.as_ref() else {
            return fail(RlStatus::NullPointer, "null pair");
        };
        if resonant.is_null() {
            return fail(RlStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(point_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let point: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(RlStatus::Parse, &e.to_string()),
        };
        match p.inner.is_resonant_json(&point, rank_tol) {
            Ok(m) => {
                *resonant = m.resonant;
                if !rank.is_null() {
                    *rank = m.rank;
                }
                RlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Solves `Gr₂(V∨) ∩ ℙK⊥` with default tolerances. Fails with
/// `Precondition` unless the section is expected to be finite.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_solve(pair: *const RlPair, seed: u64, out: *mut *mut RlReport) -> RlStatus {
    guard(|| {
        let Some(p) = pair.as_ref() else {
            return fail(RlStatus::NullPointer, "null pair");
        };
        if out.is_null() {
            return fail(RlStatus::NullPointer, "null output pointer");
        }
        let config = SectionConfig {
            solver: SolverConfig { seed, ..SolverConfig::default() },
            ..SectionConfig::default()
        };
        let result = match &p.inner {
            AnyPair::Exact(q) => solve_finite_section(q, &config),
            AnyPair::Float(q) => solve_finite_section(q, &config),
        };
        match result {
            Ok(r) => {
                boxed(report_handle(&r), out);
                RlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn report_handle(r: &SectionReport) -> RlReport {
    let json = serde_json::to_string(r).expect("reports serialize");
    RlReport {
        json: CString::new(json).expect("JSON has no NUL"),
        points: r.solutions.len(),
        expected: r.expected_count,
        transversal: r.is_transversal(),
    }
}

/// JSON text of the report, owned by the handle.
///
/// # Safety
/// `report` must be a live handle; null returns null.
#[no_mangle]
pub unsafe extern "C" fn rl_report_json(report: *const RlReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Points found, the expected count, and whether every point is simple and
/// transversal with nothing missing. Any output may be null.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_report_summary(
    report: *const RlReport,
    points: *mut usize,
    expected: *mut u64,
    transversal: *mut bool,
) -> RlStatus {
    guard(|| {
        let Some(r) = report.as_ref() else {
            return fail(RlStatus::NullPointer, "null report");
        };
        if !points.is_null() {
            *points = r.points;
        }
        if !expected.is_null() {
            *expected = r.expected;
        }
        if !transversal.is_null() {
            *transversal = r.transversal;
        }
        RlStatus::Ok
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rl_report_free(report: *mut RlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Rank test against gcd test on `count` sections of `O(a) ⊕ O(b)`; writes
/// the number of agreements.
///
/// # Safety
/// `agreements` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_p1_cross_check(
    a: usize,
    b: usize,
    count: usize,
    seed: u64,
    agreements: *mut usize,
) -> RlStatus {
    guard(|| {
        if agreements.is_null() {
            return fail(RlStatus::NullPointer, "null output pointer");
        }
        let bundle = match SplitBundle::new(a, b) {
            Ok(e) => e,
            Err(e) => return from_error(e),
        };
        match cross_check(&bundle, count, seed) {
            Ok(r) => {
                *agreements = r.agreements;
                RlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
