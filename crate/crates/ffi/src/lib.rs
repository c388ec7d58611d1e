//! C ABI over the `superfan` library.
//!
//! Objects cross the boundary as opaque heap handles. Every fallible call
//! returns an [`SfStatus`]; on failure the message is kept per thread and
//! read with [`sf_last_error`]. Strings returned through out-pointers are
//! owned by the caller and released with [`sf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use superfan::embedding::{binomials_in_box, verify_relation, DEFAULT_WITNESS_CAP};
use superfan::io::{parse_fan, parse_monomials, print_fan};
use superfan::report::{cspace_line, orbit_line};
use superfan::{DecoratedFan, Error};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    NotApplicable = 5,
    Unsupported = 6,
    Overflow = 7,
    Panic = 8,
}

/// A decorated fan. Create with `sf_fan_parse`, release with `sf_fan_free`.
pub struct SfDecoratedFan {
    inner: DecoratedFan,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(SfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotApplicable(_) => SfStatus::NotApplicable,
            Error::FiberProductUnsupported => SfStatus::Unsupported,
            _ => SfStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure and turns panics into `SfStatus::Panic`.
fn guard<F: FnOnce() -> Result<(), Failure>>(body: F) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            SfStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SfStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn fan_ref<'a>(fan: *const SfDecoratedFan) -> Result<&'a DecoratedFan, Failure> {
    fan.as_ref().map(|f| &f.inner).ok_or_else(|| null("fan"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let s = CString::new(text)
        .map_err(|_| Failure(SfStatus::Invalid, "interior NUL in output".into()))?;
    *out = s.into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or the empty string.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses fan file text and checks the fan axioms. Decorations of faces
/// follow from the maximal cones; their admissibility is checked by
/// `sf_fan_validate`.
///
/// # Safety
/// `text` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_parse(
    text: *const c_char,
    out: *mut *mut SfDecoratedFan,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let file = parse_fan(text).map_err(|e| Failure(SfStatus::Parse, e.to_string()))?;
        let report = file.fan_report();
        if !report.is_valid() {
            return Err(Failure(SfStatus::Invalid, report.to_string()));
        }
        let inner = file.into_decorated()?;
        *out = Box::into_raw(Box::new(SfDecoratedFan { inner }));
        Ok(())
    })
}

/// Releases a fan. Null is ignored.
///
/// # Safety
/// `fan` must come from `sf_fan_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_free(fan: *mut SfDecoratedFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// `SfStatus::Ok` if the decorations are c-admissible, else `SfStatus::Invalid`
/// with one violation per line in `sf_last_error`.
///
/// # Safety
/// `fan` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_validate(fan: *const SfDecoratedFan) -> SfStatus {
    guard(|| {
        let report = fan_ref(fan)?.validate_decorations();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Failure(SfStatus::Invalid, report.to_string()))
        }
    })
}

/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_rank(fan: *const SfDecoratedFan, out: *mut usize) -> SfStatus {
    guard(|| write(out, fan_ref(fan)?.rank()))
}

/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_is_split(fan: *const SfDecoratedFan, out: *mut bool) -> SfStatus {
    guard(|| write(out, fan_ref(fan)?.is_split()))
}

/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_is_smooth(fan: *const SfDecoratedFan, out: *mut bool) -> SfStatus {
    guard(|| write(out, fan_ref(fan)?.is_smooth()))
}

/// Degree `d` of the fermionic sheaf `O(d)` of a complete rank-1 fan.
///
/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_degree(fan: *const SfDecoratedFan, out: *mut i64) -> SfStatus {
    guard(|| {
        let d = fan_ref(fan)?.degree()?;
        let d = d.to_i64().ok_or_else(|| {
            Failure(
                SfStatus::Overflow,
                format!("degree {d} does not fit in 64 bits"),
            )
        })?;
        write(out, d)
    })
}

/// The `cspace:` report line.
///
/// # Safety
/// `fan` must be a live handle and `out` writable; free the result with `sf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_cspace(
    fan: *const SfDecoratedFan,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        write_string(out, cspace_line(fan_ref(fan)?)?)
    })
}

/// The `orbit` report line for the cone with id `cone`.
///
/// # Safety
/// `fan` must be a live handle, `cone` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_orbit(
    fan: *const SfDecoratedFan,
    cone: *const c_char,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let cone = read_str(cone, "cone")?;
        write_string(out, orbit_line(fan_ref(fan)?, cone)?)
    })
}

/// The fan in file format.
///
/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_fan_print(
    fan: *const SfDecoratedFan,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        write_string(out, print_fan(fan_ref(fan)?))
    })
}

/// Binomials of the ideal of `Y_{A,B}` for monomial file text, one per line,
/// from relations with entries bounded by `bound`.
///
/// # Safety
/// `text` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_ideal_binomials(
    text: *const c_char,
    bound: u32,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = read_str(text, "text")?;
        let file = parse_monomials(text).map_err(|e| Failure(SfStatus::Parse, e.to_string()))?;
        let data = file.into_data(DEFAULT_WITNESS_CAP)?;
        let relations = binomials_in_box(&data, bound)?;
        let mut lines = Vec::with_capacity(relations.len());
        for r in &relations {
            if !verify_relation(&data, r) {
                return Err(Failure(SfStatus::Invalid, format!("`{r}` does not vanish")));
            }
            lines.push(r.to_string());
        }
        write_string(out, lines.join("\n"))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
