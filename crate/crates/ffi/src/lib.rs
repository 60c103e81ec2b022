//! C ABI over the `blowup` library.
//!
//! Classes cross the boundary as opaque `BlowupClass` handles created from JSON
//! and released with `blowup_class_free`. Every fallible function returns a
//! `BlowupStatus`; on failure `blowup_last_error` describes the problem. Strings
//! returned through `char **` must be released with `blowup_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use blowup::oracle::{h0, FiniteField};
use blowup::positivity::{classify_asymptotic, nef_test_pn, nef_test_surface, ClassifyOptions, OracleBudget};
use blowup::rational::{format_q, to_i64};
use blowup::weyl::{is_minus_one_class, reduce, ReductionStatus};
use blowup::{DivisorClass, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Context = 5,
    Oracle = 6,
    Internal = 7,
}

/// Opaque divisor class.
pub struct BlowupClass(DivisorClass);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BlowupStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => BlowupStatus::Parse,
        Error::ContextMismatch(..) | Error::NotSurface(_) | Error::InvalidContext(_) => BlowupStatus::Context,
        Error::Prime(..) | Error::Points(_) | Error::Curve(_) => BlowupStatus::Oracle,
        Error::Io(_) => BlowupStatus::Internal,
        _ => BlowupStatus::Precondition,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (BlowupStatus, String)>) -> BlowupStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BlowupStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BlowupStatus::Internal
        }
    }
}

fn lib<T>(r: blowup::Result<T>) -> Result<T, (BlowupStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (BlowupStatus, String) {
    (BlowupStatus::NullPointer, "null pointer argument".into())
}

unsafe fn class_ref<'a>(p: *const BlowupClass) -> Result<&'a DivisorClass, (BlowupStatus, String)> {
    p.as_ref().map(|c| &c.0).ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (BlowupStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| (BlowupStatus::Internal, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses `{"n":..,"r":..,"d":..,"m":[..]}` into a new handle.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_class_from_json(json: *const c_char, out: *mut *mut BlowupClass) -> BlowupStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (BlowupStatus::InvalidUtf8, "input is not UTF-8".into()))?;
        let class = lib(DivisorClass::parse_json(text))?;
        *out = Box::into_raw(Box::new(BlowupClass(class)));
        Ok(())
    })
}

/// # Safety
/// `class` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn blowup_class_free(class: *mut BlowupClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// # Safety
/// `class` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_class_to_json(class: *const BlowupClass, out: *mut *mut c_char) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        write_string(out, c.to_json_value().to_string())
    })
}

/// Binomial virtual dimension.
///
/// # Safety
/// `class` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_vdim(class: *const BlowupClass, out: *mut i64) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        let v = lib(c.vdim())?;
        let v = to_i64(&v).ok_or((BlowupStatus::Precondition, "value does not fit in 64 bits".into()))?;
        *out.as_mut().ok_or_else(null)? = v;
        Ok(())
    })
}

/// Intersection number on a surface, as `"p/q"` or an integer string.
///
/// # Safety
/// Both handles must be live, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_pair(a: *const BlowupClass, b: *const BlowupClass, out: *mut *mut c_char) -> BlowupStatus {
    guard(|| {
        let (a, b) = (class_ref(a)?, class_ref(b)?);
        let p = lib(a.pair(b))?;
        write_string(out, format_q(&p))
    })
}

/// Weyl reduction. `status_out` receives 0 (standard), 1 (negative tail) or
/// 2 (degree went negative); `out` a new handle to the reduced class.
///
/// # Safety
/// `class` must be a live handle, the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn blowup_reduce(
    class: *const BlowupClass,
    out: *mut *mut BlowupClass,
    status_out: *mut i32,
) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        if out.is_null() || status_out.is_null() {
            return Err(null());
        }
        let rep = lib(reduce(c))?;
        *status_out = match rep.status {
            ReductionStatus::Standard => 0,
            ReductionStatus::PseudostandardNegativeTail => 1,
            ReductionStatus::DegreeWentNegative => 2,
        };
        *out = Box::into_raw(Box::new(BlowupClass(rep.result)));
        Ok(())
    })
}

/// # Safety
/// `class` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_is_minus_one(class: *const BlowupClass, out: *mut bool) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        let v = lib(is_minus_one_class(c))?;
        *out.as_mut().ok_or_else(null)? = v;
        Ok(())
    })
}

/// Nefness: exact for `r < 2^n`, otherwise the surface screen up to `bound`.
///
/// # Safety
/// `class` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_nef(class: *const BlowupClass, bound: i64, out: *mut bool) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        let v = match nef_test_pn(c) {
            Ok(v) => v,
            Err(Error::OutsideRegime { .. }) => lib(nef_test_surface(c, bound))?.passed(),
            Err(e) => return Err((status_of(&e), e.to_string())),
        };
        *out.as_mut().ok_or_else(null)? = v;
        Ok(())
    })
}

/// Asymptotic speciality verdict as JSON.
///
/// # Safety
/// `class` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blowup_classify(
    class: *const BlowupClass,
    prime: u64,
    bound: i64,
    out: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        let field = lib(FiniteField::new(prime))?;
        let opts = ClassifyOptions {
            orbit_bound: bound,
            budget: OracleBudget { field, ..OracleBudget::default() },
            ..ClassifyOptions::default()
        };
        let v = lib(classify_asymptotic(c, &opts))?;
        write_string(out, v.to_json_value().to_string())
    })
}

/// `h⁰` over `F_prime` at random points, minimized over `seeds[0..nseeds]`.
///
/// # Safety
/// `class` must be a live handle, `seeds` must point to `nseeds` values, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn blowup_h0(
    class: *const BlowupClass,
    prime: u64,
    seeds: *const u64,
    nseeds: usize,
    out: *mut i64,
) -> BlowupStatus {
    guard(|| {
        let c = class_ref(class)?;
        if seeds.is_null() || nseeds == 0 {
            return Err(null());
        }
        let seeds = std::slice::from_raw_parts(seeds, nseeds);
        let field = lib(FiniteField::new(prime))?;
        let res = lib(h0(c, field, seeds))?;
        *out.as_mut().ok_or_else(null)? = res.h0;
        Ok(())
    })
}

/// Message for the most recent failure on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn blowup_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn blowup_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
