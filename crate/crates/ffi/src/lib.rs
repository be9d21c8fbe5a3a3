//! C ABI for `orbit-codes`.
//!
//! Fields and matrices are opaque handles released with their `*_free`
//! function. Every fallible call returns an [`OcStatus`]; on failure the
//! message is available from [`oc_last_error`] on the same thread until the
//! next failing call. Strings returned by the library are released with
//! [`oc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbit_codes::algebra::FieldSpec;
use orbit_codes::codes::code_report;
use orbit_codes::groups::{matrix_order, signature_conjugacy_test};
use orbit_codes::matrixcore::{mat_conjugate_test, rcf, Mat};
use orbit_codes::text::{parse_divisors, parse_field, parse_matrix, parse_subspace};
use orbit_codes::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Arithmetic = 4,
    ResourceLimit = 5,
    Internal = 6,
}

/// A finite field GF(p^m).
pub struct OcField(FieldSpec);

/// A matrix over an [`OcField`].
pub struct OcMatrix(Mat);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> OcStatus {
    match e {
        Error::Parse { .. } => OcStatus::Parse,
        Error::ZeroInverse
        | Error::DivisionByZero
        | Error::Singular
        | Error::ZeroConstantTerm
        | Error::NotCoprime { .. }
        | Error::SingletonCode => OcStatus::Arithmetic,
        Error::ResourceLimit(_) | Error::ClosureCapExceeded(_) => OcStatus::ResourceLimit,
        Error::Invariant(_) => OcStatus::Internal,
        _ => OcStatus::InvalidArgument,
    }
}

struct Failure(OcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside orbit-codes".into());
            OcStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(OcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null("output pointer"))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(OcStatus::Internal, "string contains nul".into()))
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn oc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn oc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds GF(p^m) with the default modulus.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_field_new(p: u32, m: u32, out: *mut *mut OcField) -> OcStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(OcField(FieldSpec::new(p, m, None)?)));
        Ok(())
    })
}

/// Parses a field designator such as `"2^2"`, with an optional modulus
/// (`"1,1,1"`, may be null).
///
/// # Safety
/// String arguments must be nul-terminated or null; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_field_parse(
    designator: *const c_char,
    modulus: *const c_char,
    out: *mut *mut OcField,
) -> OcStatus {
    guard(|| {
        let designator = str_arg(designator, "designator")?;
        let modulus = if modulus.is_null() { None } else { Some(str_arg(modulus, "modulus")?) };
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(OcField(parse_field(designator, modulus)?)));
        Ok(())
    })
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_field_size(field: *const OcField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.size())
}

/// # Safety
/// `field` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn oc_field_free(field: *mut OcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Builds a `rows x cols` matrix from row-major element codes.
///
/// # Safety
/// `data` must point to `rows * cols` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_new(
    field: *const OcField,
    rows: usize,
    cols: usize,
    data: *const u32,
    out: *mut *mut OcMatrix,
) -> OcStatus {
    guard(|| {
        let field = handle(field, "field")?;
        let len = rows.checked_mul(cols).ok_or_else(|| Failure(OcStatus::InvalidArgument, "size overflow".into()))?;
        let values = if len == 0 {
            Vec::new()
        } else {
            if data.is_null() {
                return Err(null("data"));
            }
            std::slice::from_raw_parts(data, len).to_vec()
        };
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(OcMatrix(Mat::new(&field.0, rows, cols, values)?)));
        Ok(())
    })
}

/// Parses a matrix in row text form (`"0,1;1,1"`).
///
/// # Safety
/// `text` must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_parse(
    field: *const OcField,
    text: *const c_char,
    out: *mut *mut OcMatrix,
) -> OcStatus {
    guard(|| {
        let field = handle(field, "field")?;
        let text = str_arg(text, "text")?;
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(OcMatrix(parse_matrix(&field.0, text)?)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_free(m: *mut OcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row text form of `m`, released with [`oc_string_free`].
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_to_string(m: *const OcMatrix, out: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let out = out_arg(out)?;
        *out = c_string(m.0.to_string())?;
        Ok(())
    })
}

/// Multiplicative order of an invertible matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_order(m: *const OcMatrix, out: *mut u64) -> OcStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let out = out_arg(out)?;
        *out = matrix_order(&m.0)?;
        Ok(())
    })
}

/// Rational canonical form of `m` as a new handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_rcf(m: *const OcMatrix, out: *mut *mut OcMatrix) -> OcStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(OcMatrix(rcf(&m.0)?.matrix)));
        Ok(())
    })
}

/// Whether `a` and `b` are similar.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_matrix_similar(a: *const OcMatrix, b: *const OcMatrix, out: *mut bool) -> OcStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let out = out_arg(out)?;
        *out = mat_conjugate_test(&a.0, &b.0)?;
        Ok(())
    })
}

/// Whether the cyclic groups generated by `a` and `b` have equal signatures.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_cyclic_conjugate(a: *const OcMatrix, b: *const OcMatrix, out: *mut bool) -> OcStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let out = out_arg(out)?;
        *out = signature_conjugacy_test(&a.0, &b.0)?;
        Ok(())
    })
}

/// JSON report of the orbit code of `subspace` under the block generator
/// built from `divisors` (`"1,1,0,1;1,1"`). Release with [`oc_string_free`].
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oc_code_report_json(
    field: *const OcField,
    divisors: *const c_char,
    subspace: *const c_char,
    out: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        let field = handle(field, "field")?;
        let divisors = parse_divisors(&field.0, str_arg(divisors, "divisors")?)?;
        let subspace = parse_subspace(&field.0, str_arg(subspace, "subspace")?)?;
        let report = code_report(&subspace, &divisors)?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(OcStatus::Internal, e.to_string()))?;
        let out = out_arg(out)?;
        *out = c_string(json)?;
        Ok(())
    })
}
