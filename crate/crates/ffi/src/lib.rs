//! C ABI over toric-core.
//!
//! Every fallible call returns a `ToricStatus`; on failure the message is
//! available from `toric_last_error` on the same thread. Strings handed out
//! by this library must be released with `toric_string_free`, handles with
//! their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::Value;
use toric_core::concave_calculus::ConcavePA;
use toric_core::heights::{bundle_height, fubini_study_height, local_height, veronese_height};
use toric_core::io::{logq_value, parse_exact_function, parse_place, parse_polytope, parse_vector, polytope_value};
use toric_core::scalar::to_f64;
use toric_core::{Error, Polyhedron};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Input = 4,
    Domain = 5,
    Unsupported = 6,
    DegenerateDirection = 7,
    Numeric = 8,
    Consistency = 9,
    Panic = 10,
}

/// Opaque rational polyhedron.
pub struct ToricPolytope(Polyhedron);

/// Opaque concave piecewise-affine function with rational data.
pub struct ToricFunction(ConcavePA);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ToricStatus, msg: impl Into<String>) -> ToricStatus {
    set_error(msg.into());
    status
}

fn from_core(e: Error) -> ToricStatus {
    let status = match &e {
        Error::Input(_) => ToricStatus::Input,
        Error::Domain(_) => ToricStatus::Domain,
        Error::Unsupported(_) => ToricStatus::Unsupported,
        Error::DegenerateDirection(_) => ToricStatus::DegenerateDirection,
        Error::Numeric(_) => ToricStatus::Numeric,
        Error::Consistency(_) => ToricStatus::Consistency,
        Error::Parse(_) => ToricStatus::Parse,
    };
    fail(status, e.to_string())
}

/// Runs `body`, clearing the last error first and turning panics into `Panic`.
fn guard(body: impl FnOnce() -> Result<(), ToricStatus>) -> ToricStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ToricStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            fail(ToricStatus::Panic, msg.unwrap_or_else(|| "panic".into()))
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ToricStatus> {
    if s.is_null() {
        return Err(fail(ToricStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ToricStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn read_json(s: *const c_char) -> Result<Value, ToricStatus> {
    serde_json::from_str(read_str(s)?).map_err(|e| fail(ToricStatus::Parse, format!("invalid JSON: {e}")))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, ToricStatus> {
    p.as_ref().ok_or_else(|| fail(ToricStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), ToricStatus> {
    if out.is_null() {
        return Err(fail(ToricStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), ToricStatus> {
    let c = CString::new(s).map_err(|_| fail(ToricStatus::Consistency, "output contains a NUL byte"))?;
    write(out, c.into_raw())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn toric_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn toric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a polyhedron from `{"dim", "vertices", "rays"}` JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_polytope_from_json(json: *const c_char, out: *mut *mut ToricPolytope) -> ToricStatus {
    guard(|| {
        let p = parse_polytope(&read_json(json)?).map_err(from_core)?;
        write(out, Box::into_raw(Box::new(ToricPolytope(p))))
    })
}

/// # Safety
/// `p` must come from `toric_polytope_from_json` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn toric_polytope_free(p: *mut ToricPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Dimension of the polyhedron's affine hull.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_polytope_dim(p: *const ToricPolytope, out: *mut usize) -> ToricStatus {
    guard(|| write(out, deref(p)?.0.dim()))
}

/// Euclidean volume as an exact rational string ("p/q") and as a double.
/// Either output pointer may be NULL.
///
/// # Safety
/// `p` must be a live handle; non-NULL outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn toric_polytope_volume(p: *const ToricPolytope, exact: *mut *mut c_char, approx: *mut f64) -> ToricStatus {
    guard(|| {
        let v = deref(p)?.0.ambient_volume().map_err(from_core)?;
        if !approx.is_null() {
            approx.write(to_f64(&v));
        }
        if !exact.is_null() {
            write_string(exact, v.to_string())?;
        }
        Ok(())
    })
}

/// V-representation as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_polytope_to_json(p: *const ToricPolytope, out: *mut *mut c_char) -> ToricStatus {
    guard(|| write_string(out, polytope_value(&deref(p)?.0).to_string()))
}

/// Builds a function from `{"dim", "pieces": [{"m", "c"}], "domain"}` JSON with
/// rational constants.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_function_from_json(json: *const c_char, out: *mut *mut ToricFunction) -> ToricStatus {
    guard(|| {
        let f = parse_exact_function(&read_json(json)?).map_err(from_core)?;
        write(out, Box::into_raw(Box::new(ToricFunction(f))))
    })
}

/// # Safety
/// `f` must come from `toric_function_from_json` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn toric_function_free(f: *mut ToricFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluates at a point given as a JSON array of rationals. Outside the
/// domain the result is `Domain`.
///
/// # Safety
/// `f` must be a live handle, `point` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn toric_function_eval(f: *const ToricFunction, point: *const c_char, out: *mut *mut c_char) -> ToricStatus {
    guard(|| {
        let f = &deref(f)?.0;
        let x = parse_vector(&read_json(point)?).map_err(from_core)?;
        if x.len() != f.dim() {
            return Err(fail(ToricStatus::Input, format!("point has length {}, expected {}", x.len(), f.dim())));
        }
        let v = f.eval(&x).ok_or_else(|| fail(ToricStatus::Domain, "point is outside the domain"))?;
        write_string(out, v.to_string())
    })
}

/// Local height of the toric metric with roof `f` at `place` ("inf" or a
/// prime), as JSON `{"exact", "float"}`.
///
/// # Safety
/// `f` must be a live handle, `place` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn toric_local_height(f: *const ToricFunction, place: *const c_char, out: *mut *mut c_char) -> ToricStatus {
    guard(|| {
        let f = &deref(f)?.0;
        let lambda = parse_place(read_str(place)?).map_err(from_core)?.lambda();
        let h = local_height(f, &lambda).map_err(from_core)?;
        write_string(out, logq_value(&h).to_string())
    })
}

/// Height of ℙⁿ with the Fubini-Study metric, as an exact rational string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fubini_study_height(n: usize, out: *mut *mut c_char) -> ToricStatus {
    guard(|| write_string(out, fubini_study_height(n).to_string()))
}

/// Height of the rational normal curve of degree `r`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_veronese_height(r: u64, out: *mut f64) -> ToricStatus {
    guard(|| write(out, veronese_height(r).map_err(from_core)?.value))
}

/// Degree and height of the projective bundle with twists `a[0..len]`, as JSON
/// `{"degree", "height"}`.
///
/// # Safety
/// `a` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn toric_bundle_height(n: usize, a: *const u64, len: usize, out: *mut *mut c_char) -> ToricStatus {
    guard(|| {
        if a.is_null() {
            return Err(fail(ToricStatus::NullPointer, "null twist array"));
        }
        let twists = std::slice::from_raw_parts(a, len);
        let b = bundle_height(n, twists).map_err(from_core)?;
        write_string(out, serde_json::json!({"degree": b.degree.to_string(), "height": b.height.to_string()}).to_string())
    })
}
