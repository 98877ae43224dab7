//! C interface to `hamcoh`.
//!
//! Handles are opaque; every fallible call returns a [`HamcohStatus`] and
//! leaves a message for [`hamcoh_last_error`]. Strings returned through out
//! parameters are owned by the caller and released with
//! [`hamcoh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hamcoh::cli::CliError;
use hamcoh::complex::{Complex, DEFAULT_MAX_CELL};
use hamcoh::engine::{
    compute_cell, compute_table, cup_product, equal_mod_coboundaries, is_coboundary, verify_cocycle, Comparison,
    TableOptions,
};
use hamcoh::rational::format_q;
use hamcoh::{AlgebraSpec, Cochain, Error, Module};

/// Result of a call. Values match the exit codes of the `hamcoh` binary
/// where both exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamcohStatus {
    Ok = 0,
    Generic = 1,
    Parse = 2,
    ResourceCap = 3,
    Consistency = 4,
    Io = 5,
    Input = 6,
    NullArgument = 8,
    Panic = 9,
}

/// A cochain complex of one algebra and module, with its cell caches.
pub struct HamcohComplex {
    inner: Complex,
}

/// Dimensions of one cell.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HamcohCellDims {
    pub dim_c: usize,
    pub rank_z: usize,
    pub rank_b: usize,
    pub dim_h: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(code: i32) -> HamcohStatus {
    match code {
        2 => HamcohStatus::Parse,
        3 => HamcohStatus::ResourceCap,
        4 => HamcohStatus::Consistency,
        5 => HamcohStatus::Io,
        6 => HamcohStatus::Input,
        _ => HamcohStatus::Generic,
    }
}

struct Failure(HamcohStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let cli = CliError::from(e);
        Failure(status_of(cli.code), cli.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HamcohStatus::NullArgument, format!("error[null]: {what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HamcohStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HamcohStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("error[panic]: internal panic".into());
            HamcohStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(HamcohStatus::Input, format!("error[input]: {what} is not UTF-8")))
}

unsafe fn complex<'a>(p: *const HamcohComplex) -> Result<&'a Complex, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("complex"))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(HamcohStatus::Generic, "error[generic]: interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn json(v: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Error::from(e).into())
}

fn check_window(cx: &Complex, degree: usize, grade: i64) -> Result<(), Failure> {
    if cx.covers(degree, grade) {
        Ok(())
    } else {
        Err(Failure(
            HamcohStatus::Input,
            format!("error[input]: cell ({degree},{grade}) lies outside the complex window"),
        ))
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hamcoh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hamcoh_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a complex for `spec` (e.g. "SH(0|4)") and `module` ("trivial" or
/// "adjoint") able to compute cells up to `max_degree` and `max_grade`.
/// `max_cell` caps cell sizes; 0 disables the cap.
///
/// # Safety
/// `spec` and `module` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_complex_new(
    spec: *const c_char,
    module: *const c_char,
    max_degree: usize,
    max_grade: i64,
    max_cell: usize,
    out: *mut *mut HamcohComplex,
) -> HamcohStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec: AlgebraSpec = text(spec, "spec")?.parse()?;
        let module: Module = text(module, "module")?
            .parse()
            .map_err(|e: Error| Failure(HamcohStatus::Parse, format!("error[parse]: {e}")))?;
        let cap = (max_cell > 0).then_some(max_cell);
        let inner = Complex::new(spec, module, max_degree, max_grade).with_cap(cap);
        *out = Box::into_raw(Box::new(HamcohComplex { inner }));
        Ok(())
    })
}

/// Same as [`hamcoh_complex_new`] with the default cell cap.
///
/// # Safety
/// As for [`hamcoh_complex_new`].
#[no_mangle]
pub unsafe extern "C" fn hamcoh_complex_new_default(
    spec: *const c_char,
    module: *const c_char,
    max_degree: usize,
    max_grade: i64,
    out: *mut *mut HamcohComplex,
) -> HamcohStatus {
    hamcoh_complex_new(spec, module, max_degree, max_grade, DEFAULT_MAX_CELL, out)
}

/// # Safety
/// `cx` must come from [`hamcoh_complex_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_complex_free(cx: *mut HamcohComplex) {
    if !cx.is_null() {
        drop(Box::from_raw(cx));
    }
}

/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_cell_dims(
    cx: *const HamcohComplex,
    degree: usize,
    grade: i64,
    out: *mut HamcohCellDims,
) -> HamcohStatus {
    guard(|| {
        let cx = complex(cx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_window(cx, degree, grade)?;
        let cell = compute_cell(cx, degree, grade)?;
        *out = HamcohCellDims {
            dim_c: cell.dim_c,
            rank_z: cell.rank_z,
            rank_b: cell.rank_b,
            dim_h: cell.dim_h,
        };
        Ok(())
    })
}

/// The JSON report for degrees `degree_lo..=degree_hi` and grades
/// `grade_lo..=grade_hi`.
///
/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_table_json(
    cx: *const HamcohComplex,
    degree_lo: usize,
    degree_hi: usize,
    grade_lo: i64,
    grade_hi: i64,
    out: *mut *mut c_char,
) -> HamcohStatus {
    guard(|| {
        let cx = complex(cx)?;
        check_window(cx, degree_hi, grade_hi)?;
        let report = compute_table(cx, degree_lo..=degree_hi, grade_lo..=grade_hi, &TableOptions::default())?;
        emit(out, report.to_json())
    })
}

/// Representative cocycles of one cell as a JSON array of cochain records.
///
/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_cocycles_json(
    cx: *const HamcohComplex,
    degree: usize,
    grade: i64,
    out: *mut *mut c_char,
) -> HamcohStatus {
    guard(|| {
        let cx = complex(cx)?;
        check_window(cx, degree, grade)?;
        let cell = compute_cell(cx, degree, grade)?;
        let records: Vec<_> = cell.representatives.iter().map(Cochain::to_record).collect();
        emit(out, json(&records)?)
    })
}

unsafe fn cochain_pair(c1: *const c_char, c2: *const c_char) -> Result<(Cochain, Cochain), Failure> {
    let a = Cochain::from_json(text(c1, "first cochain")?)?;
    let b = Cochain::from_json(text(c2, "second cochain")?)?;
    if a.spec() != b.spec() {
        return Err(Failure(
            HamcohStatus::Input,
            format!(
                "error[input]: cochains over different algebras: {} vs {}",
                a.spec(),
                b.spec()
            ),
        ));
    }
    Ok((a, b))
}

fn complex_for(c: &Cochain) -> Complex {
    Complex::new(*c.spec(), c.module(), c.degree() + 1, c.weight())
}

/// Cup product of two serialized cochains: `{"product", "is_cocycle",
/// "is_coboundary"}` with `is_coboundary` null for non-cocycles.
///
/// # Safety
/// `c1`, `c2` must be NUL-terminated JSON strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_cup_json(c1: *const c_char, c2: *const c_char, out: *mut *mut c_char) -> HamcohStatus {
    guard(|| {
        let (a, b) = cochain_pair(c1, c2)?;
        let product = cup_product(&a, &b)?;
        let cx = complex_for(&product);
        let cocycle = verify_cocycle(&cx, &product)?;
        let coboundary = if cocycle {
            Some(is_coboundary(&cx, &product)?.is_some())
        } else {
            None
        };
        let v = serde_json::json!({
            "product": product.to_record(),
            "is_cocycle": cocycle,
            "is_coboundary": coboundary,
        });
        emit(out, json(&v)?)
    })
}

/// Compares two serialized cocycles modulo coboundaries:
/// `{"equal", "lambda", "both_coboundaries"}` where `c1 ~ lambda c2`.
///
/// # Safety
/// `c1`, `c2` must be NUL-terminated JSON strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_compare_json(
    c1: *const c_char,
    c2: *const c_char,
    out: *mut *mut c_char,
) -> HamcohStatus {
    guard(|| {
        let (a, b) = cochain_pair(c1, c2)?;
        let cx = complex_for(&a);
        let cmp = equal_mod_coboundaries(&cx, &a, &b)?;
        let v = serde_json::json!({
            "equal": cmp.equal(),
            "lambda": cmp.scalar().map(format_q),
            "both_coboundaries": cmp == Comparison::BothCoboundaries,
        });
        emit(out, json(&v)?)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hamcoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
