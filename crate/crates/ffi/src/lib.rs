//! C ABI over `ncvec`.
//!
//! Objects cross the boundary as opaque handles created by `ncv_*` functions
//! and released with the matching `*_free`. Every fallible call returns an
//! [`NcvStatus`]; on failure a message for the calling thread is available
//! from [`ncv_last_error`] until the next failing call on that thread.
//! Strings handed out by the library must be released with [`ncv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncvec::io::{self, InputDoc, ReportDocument};
use ncvec::presets::{self, Preset};
use ncvec::{derivations, reflexivity_report, z_closure, Algebra, Error, Matrix, ReflexivityReport};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Structure constants are not associative or the unit law fails.
    InvalidAlgebra = 4,
    UnknownPreset = 5,
    BadParams = 6,
    NotADerivation = 7,
    /// Shape and dimension mismatches between inputs.
    Shape = 8,
    /// An internal cross-check failed. Indicates a bug.
    Inconsistent = 9,
    Panic = 10,
}

/// Opaque algebra handle.
pub struct NcvAlgebra {
    alg: Algebra,
    source: String,
}

/// Opaque handle to a computed reflexivity report.
pub struct NcvReport {
    alg: Algebra,
    source: String,
    generators: Option<Vec<Matrix>>,
    report: ReflexivityReport,
}

/// Plain-data view of a report.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NcvSummary {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub module_dim: usize,
    pub star_dual_dim: usize,
    pub dual_dim: usize,
    pub bidual_dim: usize,
    pub embedding_rank: usize,
    pub ghost_covector_dim: usize,
    pub ghost_bidual_dim: usize,
    pub injective: bool,
    pub reflexive: bool,
    pub nondegenerate: bool,
    pub projective: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NcvStatus {
    match e {
        Error::Parse { .. } | Error::Io(_) => NcvStatus::Parse,
        Error::NotAssociative { .. } | Error::BadUnit { .. } => NcvStatus::InvalidAlgebra,
        Error::UnknownPreset(_) => NcvStatus::UnknownPreset,
        Error::BadParams(_) => NcvStatus::BadParams,
        Error::NotADerivation { .. } => NcvStatus::NotADerivation,
        Error::ShapeMismatch(_) | Error::DimensionMismatch { .. } | Error::AlgebraMismatch { .. } => NcvStatus::Shape,
        Error::NotCentral { .. }
        | Error::NotInModule
        | Error::CoefficientNotCentral { .. }
        | Error::LiftMismatch
        | Error::Inconsistent(_) => NcvStatus::Inconsistent,
    }
}

fn fail(status: NcvStatus, msg: &str) -> NcvStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), NcvStatus>) -> NcvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcvStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(NcvStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> NcvStatus {
    fail(status_of(&e), &e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, NcvStatus> {
    if p.is_null() {
        return Err(fail(NcvStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(NcvStatus::InvalidUtf8, &format!("{what} is not valid UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), NcvStatus> {
    if out.is_null() {
        Err(fail(NcvStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

/// Message of the last failing call on this thread, or null. The pointer is
/// owned by the library and stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn ncv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn ncv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a preset algebra. `param` is the size or order; pass a negative
/// value for presets without a parameter (`dual-numbers`, `quaternions`).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ncv_algebra_from_preset(
    name: *const c_char,
    param: i64,
    out: *mut *mut NcvAlgebra,
) -> NcvStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name, "preset name")?;
        let preset = Preset::parse(name, (param >= 0).then_some(param)).map_err(lib_err)?;
        let alg = presets::build(preset).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NcvAlgebra {
            alg,
            source: format!("preset:{preset}"),
        }));
        Ok(())
    })
}

/// Parses an algebra definition in the JSON input format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ncv_algebra_from_json(json: *const c_char, out: *mut *mut NcvAlgebra) -> NcvStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json, "algebra JSON")?;
        let alg = io::parse_algebra_json(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NcvAlgebra {
            alg,
            source: "inline:json".into(),
        }));
        Ok(())
    })
}

/// Dimension of the algebra over Q, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ncv_algebra_dim(alg: *const NcvAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.dim())
}

/// Dimension of the center, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ncv_algebra_center_dim(alg: *const NcvAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.center().dim())
}

/// # Safety
/// `alg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncv_algebra_free(alg: *mut NcvAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Computes the reflexivity report for `V = Der(A)` when `submodule_json` is
/// null, otherwise for the Z-closure of the given generator matrices.
///
/// # Safety
/// `alg` must be a live handle, `submodule_json` null or a nul-terminated
/// string, and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ncv_report_compute(
    alg: *const NcvAlgebra,
    submodule_json: *const c_char,
    out: *mut *mut NcvReport,
) -> NcvStatus {
    guard(|| {
        check_out(out)?;
        let a = alg
            .as_ref()
            .ok_or_else(|| fail(NcvStatus::NullPointer, "algebra handle is null"))?;
        let generators = if submodule_json.is_null() {
            None
        } else {
            let text = read_str(submodule_json, "submodule JSON")?;
            Some(io::parse_submodule_json(text, a.alg.dim()).map_err(lib_err)?)
        };
        let v = match &generators {
            Some(g) => z_closure(&a.alg, g).map_err(lib_err)?,
            None => derivations(&a.alg),
        };
        let report = reflexivity_report(&a.alg, &v).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NcvReport {
            alg: a.alg.clone(),
            source: a.source.clone(),
            generators,
            report,
        }));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ncv_report_summary(report: *const NcvReport, out: *mut NcvSummary) -> NcvStatus {
    guard(|| {
        check_out(out)?;
        let r = &report
            .as_ref()
            .ok_or_else(|| fail(NcvStatus::NullPointer, "report handle is null"))?
            .report;
        *out = NcvSummary {
            algebra_dim: r.algebra_dim,
            center_dim: r.center_dim,
            module_dim: r.module_dim,
            star_dual_dim: r.star_dual_dim,
            dual_dim: r.dual_dim,
            bidual_dim: r.bidual_dim,
            embedding_rank: r.embedding_rank,
            ghost_covector_dim: r.ghost_covector_dim,
            ghost_bidual_dim: r.ghost_bidual_dim,
            injective: r.injective,
            reflexive: r.reflexive,
            nondegenerate: r.nondegenerate,
            projective: r.certificate.is_some(),
        };
        Ok(())
    })
}

/// Serializes the report in the same canonical JSON the CLI prints. The
/// string must be released with [`ncv_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ncv_report_to_json(
    report: *const NcvReport,
    with_bases: bool,
    out: *mut *mut c_char,
) -> NcvStatus {
    guard(|| {
        check_out(out)?;
        let r = report
            .as_ref()
            .ok_or_else(|| fail(NcvStatus::NullPointer, "report handle is null"))?;
        let input = InputDoc::new(&r.alg, r.source.clone(), r.generators.as_deref());
        let json = ReportDocument::new(&r.alg, &r.report, input, with_bases).to_json();
        *out = CString::new(json).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncv_report_free(report: *mut NcvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
