//! C interface to `gtalg`.
//!
//! Every fallible call returns a [`GtStatus`]; on failure the message is
//! available from [`gt_last_error_message`] on the same thread. Strings
//! handed out by the library must be released with [`gt_string_free`];
//! handles with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gtalg::combinat::Composition;
use gtalg::genus::{self, DeformationParameters, GenusSeries, ManifoldModel};
use gtalg::symm::{self, GeneratorConvention, Identity, MatchStatus, SymmBasis, SymmFn};
use gtalg::tor::{self, CoefficientRing};
use gtalg::{Error, GradedPolynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BoundMismatch = 4,
    ConstantTerm = 5,
    NotInvertible = 6,
    Divergent = 7,
    Precision = 8,
    Truncation = 9,
    Domain = 10,
    Config = 11,
    Io = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtConvention {
    /// Generators indexed from 0: degrees 1, 5, 9, ... and 2, 6, 10, ...
    FromZero = 0,
    /// Generators indexed from 1: degrees 5, 9, ... and 6, 10, ...
    FromOne = 1,
}

impl From<GtConvention> for GeneratorConvention {
    fn from(c: GtConvention) -> Self {
        match c {
            GtConvention::FromZero => GeneratorConvention::FromZero,
            GtConvention::FromOne => GeneratorConvention::FromOne,
        }
    }
}

/// Opaque polynomial handle.
pub struct GtPolynomial(GradedPolynomial);

/// Opaque manifold model handle.
pub struct GtManifold(ManifoldModel);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GtStatus {
    match e {
        Error::Parse { .. } => GtStatus::Parse,
        Error::BoundMismatch { .. } => GtStatus::BoundMismatch,
        Error::ConstantTerm { .. } => GtStatus::ConstantTerm,
        Error::NotCompositionallyInvertible => GtStatus::NotInvertible,
        Error::Divergent { .. } => GtStatus::Divergent,
        Error::Precision(_) => GtStatus::Precision,
        Error::Truncation { .. } => GtStatus::Truncation,
        Error::Domain(_) => GtStatus::Domain,
        Error::Config(_) => GtStatus::Config,
        Error::Io(_) => GtStatus::Io,
    }
}

struct Failure(GtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Outcome) -> GtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GtStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GtStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GtStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GtStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(Failure(GtStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| Failure(GtStatus::Domain, "result contains a nul byte".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(GtStatus::NullPointer, "null handle".into()))
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `3*c[1]^2 - 2*c[2]` style text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_parse(text_in: *const c_char, out: *mut *mut GtPolynomial) -> GtStatus {
    guard(|| {
        let p: GradedPolynomial = text(text_in)?.parse()?;
        write_out(out, Box::into_raw(Box::new(GtPolynomial(p))))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_to_string(p: *const GtPolynomial, out: *mut *mut c_char) -> GtStatus {
    guard(|| write_string(out, handle(p)?.0.to_string()))
}

/// Product of two polynomials as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_mul(
    a: *const GtPolynomial,
    b: *const GtPolynomial,
    out: *mut *mut GtPolynomial,
) -> GtStatus {
    guard(|| {
        let product = &handle(a)?.0 * &handle(b)?.0;
        write_out(out, Box::into_raw(Box::new(GtPolynomial(product))))
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_free(p: *mut GtPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Catalog model (`CP2`, `CP1xCP1`, `point`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_manifold_catalog(name: *const c_char, out: *mut *mut GtManifold) -> GtStatus {
    guard(|| {
        let m = ManifoldModel::catalog(text(name)?)?;
        write_out(out, Box::into_raw(Box::new(GtManifold(m))))
    })
}

/// Model from its JSON presentation.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_manifold_from_json(json: *const c_char, out: *mut *mut GtManifold) -> GtStatus {
    guard(|| {
        let m = ManifoldModel::from_json(text(json)?)?;
        write_out(out, Box::into_raw(Box::new(GtManifold(m))))
    })
}

/// Complex dimension, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gt_manifold_dimension(m: *const GtManifold) -> u32 {
    m.as_ref().map_or(0, |m| m.0.dim_c)
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gt_manifold_free(m: *mut GtManifold) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `ch_k` of the tangent bundle as a new polynomial handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_chern_character(m: *const GtManifold, k: u32, out: *mut *mut GtPolynomial) -> GtStatus {
    guard(|| {
        let ch = genus::chern_character(&handle(m)?.0, k);
        write_out(out, Box::into_raw(Box::new(GtPolynomial(ch))))
    })
}

/// Genus for a named series (`A-hat`, `Todd`, `L`, `Gamma`), as text.
///
/// # Safety
/// `m` must be a live handle; `series` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_genus_compute(
    m: *const GtManifold,
    series: *const c_char,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let rho = GenusSeries::named(text(series)?, m.dim_c + 1)?;
        write_string(out, genus::genus(m, &rho)?.to_string())
    })
}

/// Deformed genus; `params` uses the `1:1/3,3:0` syntax.
///
/// # Safety
/// `m` must be a live handle; strings nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_genus_deform(
    m: *const GtManifold,
    series: *const c_char,
    params: *const c_char,
    convention: GtConvention,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let rho = GenusSeries::named(text(series)?, m.dim_c + 1)?;
        let t = DeformationParameters::parse(text(params)?, convention.into())?;
        write_string(out, genus::deform_genus(m, &rho, &t)?.to_string())
    })
}

/// Rewrites `expr` (given in basis `from`, one of E, P, H, M) in basis `to`.
///
/// # Safety
/// Strings must be nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_symm_convert(
    from: *const c_char,
    to: *const c_char,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let from: SymmBasis = text(from)?.parse()?;
        let to: SymmBasis = text(to)?.parse()?;
        let f = SymmFn::parse(from, text(expr)?)?;
        write_string(out, symm::convert(&f, to).to_string())
    })
}

/// Checks `d-classes`, `chern-newton` or `a-classes` through `max_weight`.
/// `first_mismatch` receives 0 on an exact match.
///
/// # Safety
/// `which` must be nul-terminated; output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn gt_identity_check(
    which: *const c_char,
    max_weight: u32,
    exact_match: *mut bool,
    first_mismatch: *mut u32,
) -> GtStatus {
    guard(|| {
        let which: Identity = text(which)?.parse()?;
        let report = symm::check_identity(which, max_weight)?;
        write_out(exact_match, report.status == MatchStatus::ExactMatch)?;
        write_out(first_mismatch, report.first_mismatch_weight.unwrap_or(0))
    })
}

/// Certified multizeta value of an index such as `(2,3)`.
///
/// # Safety
/// `index` must be nul-terminated; output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn gt_mzv_eval(
    index: *const c_char,
    target_error: f64,
    value: *mut f64,
    error_bound: *mut f64,
) -> GtStatus {
    guard(|| {
        let idx: Composition = text(index)?.parse()?;
        let v = gtalg::mzv::mzv_eval(&idx, target_error)?;
        write_out(value, v.value)?;
        write_out(error_bound, v.error_bound)
    })
}

/// Tor table of `exterior:5,9`-style algebras as `s,t,total,dim` CSV.
///
/// # Safety
/// `algebra` must be nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_tor_csv(algebra: *const c_char, bound: u32, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let alg = tor::parse_algebra(text(algebra)?, bound)?;
        write_string(out, tor::tor_via_bar(&alg, bound)?.to_csv())
    })
}

/// Dimensions of `sOmega`, `THH` or `KTheoryFiber` in degrees `0..=bound`,
/// written to `dims[0..=bound]`. `capacity` must be at least `bound + 1`.
///
/// # Safety
/// `which` must be nul-terminated; `dims` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn gt_series_dims(
    which: *const c_char,
    bound: u32,
    convention: GtConvention,
    dims: *mut u64,
    capacity: usize,
) -> GtStatus {
    guard(|| {
        let ring: CoefficientRing = text(which)?.parse()?;
        if dims.is_null() {
            return Err(Failure(GtStatus::NullPointer, "null output buffer".into()));
        }
        if capacity < bound as usize + 1 {
            return Err(Failure(GtStatus::BufferTooSmall, format!("need {} slots", bound + 1)));
        }
        let series = tor::coefficient_ring_series(ring, bound, convention.into());
        for (i, d) in series.iter().enumerate() {
            let v = u64::try_from(d).map_err(|_| Failure(GtStatus::Domain, "dimension exceeds 64 bits".into()))?;
            dims.add(i).write(v);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        gt_string_free(s);
        out
    }

    #[test]
    fn errors_set_the_message() {
        unsafe {
            let mut m = ptr::null_mut();
            assert_eq!(gt_manifold_catalog(c("CP9").as_ptr(), &mut m), GtStatus::Domain);
            assert!(m.is_null());
            let msg = CStr::from_ptr(gt_last_error_message()).to_str().unwrap();
            assert!(msg.contains("CP9"));
            assert_eq!(gt_manifold_catalog(ptr::null(), &mut m), GtStatus::NullPointer);
        }
    }

    #[test]
    fn polynomial_round_trip() {
        unsafe {
            let mut a = ptr::null_mut();
            let mut b = ptr::null_mut();
            assert_eq!(gt_polynomial_parse(c("1 + c[1]").as_ptr(), &mut a), GtStatus::Ok);
            assert_eq!(gt_polynomial_parse(c("1 - c[1]").as_ptr(), &mut b), GtStatus::Ok);
            let mut p = ptr::null_mut();
            assert_eq!(gt_polynomial_mul(a, b, &mut p), GtStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(gt_polynomial_to_string(p, &mut s), GtStatus::Ok);
            assert_eq!(take(s), "1 - c[1]^2");
            gt_polynomial_free(a);
            gt_polynomial_free(b);
            gt_polynomial_free(p);
        }
    }
}
