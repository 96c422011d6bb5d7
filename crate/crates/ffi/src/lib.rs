//! C ABI over the `lsdc` library.
//!
//! Schemes cross the boundary as opaque `LsdcScheme` handles. Every
//! fallible call returns an [`LsdcStatus`]; on failure the message is kept
//! per thread and read back with [`lsdc_last_error_message`]. Strings
//! returned to the caller are released with [`lsdc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lsdc::bounds::{entropy_q, entropy_q_inv};
use lsdc::fq::{FieldSpec, FqMatrix, FqVector};
use lsdc::io::{scheme_from_json, scheme_to_json};
use lsdc::scheme::{build_scheme_coded, verify_scheme, worked_example, Budgets, DemandMatrix, Scheme, Strategy};
use lsdc::sim::run_round;
use lsdc::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsdcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad shape, field, domain or value.
    InvalidArgument = 3,
    ResourceLimit = 4,
    NoSolution = 5,
    Parse = 6,
    Io = 7,
    /// The scheme loaded but `D E != F`.
    VerifyFailed = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

/// Decoding-matrix construction for [`lsdc_build_coded`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsdcStrategy {
    FullCovering = 0,
    PartialCovering = 1,
    PartialCoveringExact = 2,
}

/// Opaque scheme handle.
pub struct LsdcScheme {
    inner: Scheme,
}

/// Shape of a scheme.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LsdcDims {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub l: usize,
    pub t: usize,
}

/// Exact costs as reduced fractions.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LsdcCosts {
    pub gamma_num: u64,
    pub gamma_den: u64,
    pub delta_num: u64,
    pub delta_den: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> LsdcStatus {
    match err {
        Error::ResourceLimit { .. } => LsdcStatus::ResourceLimit,
        Error::NoSolution | Error::InfeasibleD(_) => LsdcStatus::NoSolution,
        Error::Json(_) => LsdcStatus::Parse,
        Error::Io(_) => LsdcStatus::Io,
        _ => LsdcStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (LsdcStatus, String)>) -> LsdcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsdcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            LsdcStatus::Internal
        }
    }
}

fn lib<T>(r: lsdc::Result<T>) -> Result<T, (LsdcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LsdcStatus, String) {
    (LsdcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn scheme_ref<'a>(s: *const LsdcScheme) -> Result<&'a Scheme, (LsdcStatus, String)> {
    s.as_ref().map(|h| &h.inner).ok_or_else(|| null("scheme"))
}

unsafe fn emit(out: *mut *mut LsdcScheme, s: Scheme) -> Result<(), (LsdcStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(LsdcScheme { inner: s }));
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lsdc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a scheme from JSON. The scheme is not verified; see
/// [`lsdc_scheme_verify`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_from_json(json: *const c_char, out: *mut *mut LsdcScheme) -> LsdcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (LsdcStatus::InvalidUtf8, e.to_string()))?;
        emit(out, lib(scheme_from_json(text))?)
    })
}

/// Serializes a scheme; free the result with [`lsdc_string_free`].
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_to_json(scheme: *const LsdcScheme, out: *mut *mut c_char) -> LsdcStatus {
    guard(|| {
        let s = scheme_ref(scheme)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CString::new(scheme_to_json(s)).map_err(|e| (LsdcStatus::Internal, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn lsdc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `scheme` must come from this library or be null, and is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_free(scheme: *mut LsdcScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// The worked example over GF(7) with K = 4, N = 8, L = 6.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_worked_example(out: *mut *mut LsdcScheme) -> LsdcStatus {
    guard(|| emit(out, worked_example()))
}

/// Builds a coded scheme for the row-major K x L demand matrix `f`.
/// A negative `radius` lets the builder choose it.
///
/// # Safety
/// `f` must hold `k * l` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_build_coded(
    q: u32,
    f: *const u32,
    k: usize,
    l: usize,
    n: usize,
    strategy: LsdcStrategy,
    radius: c_int,
    seed: u64,
    out: *mut *mut LsdcScheme,
) -> LsdcStatus {
    guard(|| {
        if f.is_null() {
            return Err(null("f"));
        }
        let field = lib(FieldSpec::new(q))?;
        let data = std::slice::from_raw_parts(f, k * l).to_vec();
        let demand = lib(FqMatrix::from_flat(field, k, l, data).and_then(DemandMatrix::new))?;
        let radius = usize::try_from(radius).ok();
        let strategy = match strategy {
            LsdcStrategy::FullCovering => Strategy::FullCovering { radius },
            LsdcStrategy::PartialCovering => Strategy::PartialCovering { radius, exact: false },
            LsdcStrategy::PartialCoveringExact => Strategy::PartialCovering { radius, exact: true },
        };
        let budgets = Budgets {
            seed,
            ..Budgets::default()
        };
        emit(out, lib(build_scheme_coded(&demand, n, &strategy, &budgets))?)
    })
}

/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_dims(scheme: *const LsdcScheme, out: *mut LsdcDims) -> LsdcStatus {
    guard(|| {
        let s = scheme_ref(scheme)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = LsdcDims {
            q: s.q(),
            k: s.k(),
            n: s.n(),
            l: s.l(),
            t: s.t(),
        };
        Ok(())
    })
}

/// Checks `D E = F`. Returns [`LsdcStatus::VerifyFailed`] naming the first
/// wrong entry (1-based) otherwise.
///
/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_verify(scheme: *const LsdcScheme) -> LsdcStatus {
    guard(|| {
        let v = lib(verify_scheme(scheme_ref(scheme)?))?;
        match v.mismatch {
            None => Ok(()),
            Some((r, c)) => Err((
                LsdcStatus::VerifyFailed,
                format!("D E differs from F at row {}, column {}", r + 1, c + 1),
            )),
        }
    })
}

/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_scheme_costs(scheme: *const LsdcScheme, out: *mut LsdcCosts) -> LsdcStatus {
    guard(|| {
        let c = scheme_ref(scheme)?.costs();
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = LsdcCosts {
            gamma_num: *c.gamma.numer(),
            gamma_den: *c.gamma.denom(),
            delta_num: *c.delta.numer(),
            delta_den: *c.delta.denom(),
        };
        Ok(())
    })
}

/// One round on file values `w` (length L). Writes `F w` and the users'
/// decoded values `D z` (length K each) and whether they agree.
///
/// # Safety
/// `w` must hold L values, `demanded` and `decoded` room for K, `correct`
/// be writable; the two output arrays may be null.
#[no_mangle]
pub unsafe extern "C" fn lsdc_run_round(
    scheme: *const LsdcScheme,
    w: *const u32,
    demanded: *mut u32,
    decoded: *mut u32,
    correct: *mut bool,
) -> LsdcStatus {
    guard(|| {
        let s = scheme_ref(scheme)?;
        if w.is_null() {
            return Err(null("w"));
        }
        let correct = correct.as_mut().ok_or_else(|| null("correct"))?;
        let w = lib(FqVector::new(s.field(), std::slice::from_raw_parts(w, s.l()).to_vec()))?;
        let r = lib(run_round(s, &w))?;
        if !demanded.is_null() {
            std::slice::from_raw_parts_mut(demanded, s.k()).copy_from_slice(r.demanded.entries());
        }
        if !decoded.is_null() {
            std::slice::from_raw_parts_mut(decoded, s.k()).copy_from_slice(r.decoded.entries());
        }
        *correct = r.correct();
        Ok(())
    })
}

/// q-ary entropy on `[0, 1 - 1/q]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_entropy_q(x: f64, q: u32, out: *mut f64) -> LsdcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lib(entropy_q(x, q))?;
        Ok(())
    })
}

/// Inverse of [`lsdc_entropy_q`] on `[0, 1]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lsdc_entropy_q_inv(y: f64, q: u32, out: *mut f64) -> LsdcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lib(entropy_q_inv(y, q))?;
        Ok(())
    })
}
