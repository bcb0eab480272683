//! C ABI over `regmaps`.
//!
//! Maps are opaque `RmMap` handles owned by the caller and released with
//! `rm_map_free`. Every fallible call returns an `RmStatus`; on failure the
//! message is available from `rm_last_error_message` on the same thread.
//! Strings returned through out-parameters are released with `rm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use regmaps::catalog::{self, Target};
use regmaps::ratmap::{MatrixMap, RationalMap, VarietyRegistry};
use regmaps::{topo, Error};

/// Opaque map handle.
pub struct RmMap {
    target: Target,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownTarget = 3,
    Parse = 4,
    InvalidArgument = 5,
    NotOnVariety = 6,
    DenominatorZero = 7,
    VarietyMismatch = 8,
    BufferTooSmall = 9,
    VerificationFailed = 10,
    NonConvergent = 11,
    Internal = 12,
    Panic = 13,
}

/// Monte Carlo degree estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RmDegree {
    pub estimate: f64,
    pub half_width: f64,
    pub rounded: i64,
    pub samples: u64,
    pub seed: u64,
    pub conclusive: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(RmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownTarget(_) => RmStatus::UnknownTarget,
            Error::Parse(_) | Error::Json(_) | Error::Io(_) => RmStatus::Parse,
            Error::InvalidArgument(_) | Error::InvalidJMapInput(_) | Error::MissingAssignment(_) => {
                RmStatus::InvalidArgument
            }
            Error::NotOnVariety { .. } => RmStatus::NotOnVariety,
            Error::DenominatorZeroAtPoint(_) | Error::ZeroDenominator(_) => RmStatus::DenominatorZero,
            Error::VarietyMismatch { .. } | Error::RegistryMismatch => RmStatus::VarietyMismatch,
            Error::NonConvergent(_) => RmStatus::NonConvergent,
            _ => RmStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

fn fail<T>(status: RmStatus, msg: &str) -> Result<T, Fail> {
    Err(Fail(status, msg.to_string()))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside regmaps");
            RmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return fail(RmStatus::NullPointer, "null string argument");
    }
    CStr::from_ptr(s).to_str().or_else(|_| fail(RmStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn map_arg<'a>(m: *const RmMap) -> Result<&'a RmMap, Fail> {
    m.as_ref().ok_or_else(|| Fail(RmStatus::NullPointer, "null map handle".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(RmStatus::NullPointer, "null output pointer".into()))
}

fn new_handle(target: Target) -> *mut RmMap {
    Box::into_raw(Box::new(RmMap { target }))
}

fn new_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .or_else(|_| fail(RmStatus::Internal, "string contains NUL"))
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn rm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a catalog map such as `"oplus:2"` or `"chain:4:2"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_map_from_catalog(name: *const c_char, out: *mut *mut RmMap) -> RmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let t = catalog::resolve(str_arg(name)?, &VarietyRegistry::default())?;
        *out = new_handle(t);
        Ok(())
    })
}

/// Reads a map from its JSON file format; objects with `rows` are matrix maps.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_map_from_json(json: *const c_char, out: *mut *mut RmMap) -> RmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let v: serde_json::Value =
            serde_json::from_str(str_arg(json)?).map_err(|e| Fail(RmStatus::Parse, e.to_string()))?;
        let reg = VarietyRegistry::default();
        let (map, matrix) = if v.get("rows").is_some() {
            let m = MatrixMap::from_json(&v, &reg)?;
            (m.base().clone(), Some(m))
        } else {
            (RationalMap::from_json(&v, &reg)?, None)
        };
        *out = new_handle(Target { name: "json".into(), map, matrix, jmap: None });
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `map` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rm_map_free(map: *mut RmMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Serializes a map to its canonical JSON file format.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_map_to_json(map: *const RmMap, out: *mut *mut c_char) -> RmStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = new_string(map_arg(map)?.target.to_json().to_string())?;
        Ok(())
    })
}

/// Composes `f ∘ g` into a new handle.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_map_compose(f: *const RmMap, g: *const RmMap, out: *mut *mut RmMap) -> RmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let (f, g) = (map_arg(f)?, map_arg(g)?);
        let map = f.target.map.compose(&g.target.map)?;
        let name = format!("{}∘{}", f.target.name, g.target.name);
        *out = new_handle(Target { name, map, matrix: None, jmap: None });
        Ok(())
    })
}

/// Ambient coordinate counts of the domain and codomain.
///
/// # Safety
/// `map` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_map_dims(map: *const RmMap, domain: *mut usize, codomain: *mut usize) -> RmStatus {
    guard(|| {
        let m = &map_arg(map)?.target.map;
        *out_arg(domain)? = m.domain().ambient_dim();
        *out_arg(codomain)? = m.codomain().ambient_dim();
        Ok(())
    })
}

/// Evaluates in floating point. `x` holds the domain coordinates and `out`
/// receives the codomain coordinates.
///
/// # Safety
/// `x` must point to `x_len` readable doubles, `out` to `out_len` writable ones.
#[no_mangle]
pub unsafe extern "C" fn rm_map_eval_f64(
    map: *const RmMap,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> RmStatus {
    guard(|| {
        let m = &map_arg(map)?.target.map;
        if x.is_null() || out.is_null() {
            return fail(RmStatus::NullPointer, "null coordinate buffer");
        }
        if x_len != m.domain().ambient_dim() {
            return fail(RmStatus::InvalidArgument, "point has the wrong number of coordinates");
        }
        let y = m.evaluate_f64(std::slice::from_raw_parts(x, x_len))?;
        if out_len < y.len() {
            return fail(RmStatus::BufferTooSmall, "output buffer too small");
        }
        ptr::copy_nonoverlapping(y.as_ptr(), out, y.len());
        Ok(())
    })
}

/// Winding number of a self-map of S^1.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_winding(map: *const RmMap, out: *mut i64) -> RmStatus {
    guard(|| {
        *out_arg(out)? = topo::winding(&map_arg(map)?.target.map)?;
        Ok(())
    })
}

/// Monte Carlo degree of a self-map of S^n, n >= 2.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_degree_mc(map: *const RmMap, samples: u64, seed: u64, out: *mut RmDegree) -> RmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let d = topo::degree_mc(&map_arg(map)?.target.map, samples as usize, seed)?;
        *out = RmDegree {
            estimate: d.estimate,
            half_width: d.half_width,
            rounded: d.rounded,
            samples: d.samples as u64,
            seed: d.seed,
            conclusive: d.conclusive,
        };
        Ok(())
    })
}

/// Runs the verification suites of a catalog target. Returns
/// `RM_STATUS_VERIFICATION_FAILED` when any check fails; the JSON report is
/// written to `report` in both cases when it is not NULL.
///
/// # Safety
/// `name` must be a NUL-terminated string; `report` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rm_verify_target(
    name: *const c_char,
    trials: usize,
    samples: usize,
    seed: u64,
    report: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let t = catalog::resolve(str_arg(name)?, &VarietyRegistry::default())?;
        let reports = catalog::verify(&t, trials, samples, seed)?;
        let passed = reports.iter().all(|r| r.passed);
        if let Some(out) = report.as_mut() {
            let v = serde_json::json!({"target": t.name, "passed": passed, "reports": reports});
            *out = new_string(v.to_string())?;
        }
        if passed {
            Ok(())
        } else {
            fail(RmStatus::VerificationFailed, "verification failed")
        }
    })
}

/// Radon-Hurwitz number `a_p`, p >= 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_radon_hurwitz(p: u64, out: *mut u64) -> RmStatus {
    guard(|| {
        *out_arg(out)? = topo::radon_hurwitz(p)?.a_p;
        Ok(())
    })
}

/// Whether `k + 1` is divisible by `a_{m+2}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_check_codim_pair(m: u64, k: u64, out: *mut bool) -> RmStatus {
    guard(|| {
        *out_arg(out)? = topo::check_codim_pair(m, k)?.holds;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_stable_codes() {
        assert_eq!(Fail::from(Error::UnknownTarget("x".into())).0, RmStatus::UnknownTarget);
        assert_eq!(Fail::from(Error::Parse("x".into())).0, RmStatus::Parse);
        assert_eq!(Fail::from(Error::Singular).0, RmStatus::Internal);
    }

    #[test]
    fn panics_become_a_status() {
        assert_eq!(guard(|| panic!("boom")), RmStatus::Panic);
        assert!(!rm_last_error_message().is_null());
    }
}
