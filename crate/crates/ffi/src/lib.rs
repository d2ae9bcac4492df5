//! C ABI over `tribound`.
//!
//! Every fallible function returns a [`TbStatus`] and writes its result
//! through an out pointer only on success. After a non-`TB_STATUS_OK`
//! return, [`tb_last_error`] describes the failure on the calling thread.
//! Handles and strings handed out must be released with
//! [`tb_triangulation_free`] and [`tb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tribound::constructions::{builtin_by_name, verify_paper_t};
use tribound::construct::cone;
use tribound::cusp::{
    classify_shape, euler_parity_obstruction, pairing_obstruction_3d, parse_modulus, trace_field_obstruction,
    twist_knot_verdict, Modulus, ShapeClass, Verdict, VerdictTag,
};
use tribound::cycles::check_valence;
use tribound::faces::{euler_characteristic, face_classes};
use tribound::format::{parse, serialize};
use tribound::iso::isomorphism;
use tribound::orient::orient;
use tribound::{Error, Triangulation};

/// Opaque triangulation handle.
pub struct TbTriangulation {
    inner: Triangulation,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// Structurally invalid triangulation, or bad argument value.
    InvalidInput = 4,
    /// The operation's precondition does not hold (partial input, wrong
    /// dimension, ...).
    Precondition = 5,
    UnknownName = 6,
    /// Float modulus too close to a boundary curve to classify.
    Ambiguous = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbShapeClass {
    Rectangular = 0,
    Rhombic = 1,
    Generic = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbVerdict {
    ObstructionViolated = 0,
    Inconclusive = 1,
    Inapplicable = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TbStatus {
    match e {
        Error::Parse { .. } | Error::Modulus { .. } | Error::FieldMismatch(..) => TbStatus::ParseError,
        Error::UnknownBuiltin { .. } => TbStatus::UnknownName,
        Error::Ambiguous { .. } => TbStatus::Ambiguous,
        Error::Partial(_) | Error::Dimension { .. } | Error::Precondition(_) | Error::FaceDimension { .. } => {
            TbStatus::Precondition
        }
        _ => TbStatus::InvalidInput,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (TbStatus, String)>) -> TbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TbStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TbStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TbStatus, String) {
    (TbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TbStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const TbTriangulation, what: &str) -> Result<&'a Triangulation, (TbStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (TbStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed(t: Triangulation) -> *mut TbTriangulation {
    Box::into_raw(Box::new(TbTriangulation { inner: t }))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn valid(t: &Triangulation) -> Result<(), (TbStatus, String)> {
    let r = t.validate();
    if r.valid {
        Ok(())
    } else {
        Err((TbStatus::InvalidInput, format!("invalid triangulation: {}", r.summary())))
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the text file format. Syntax only: structural defects show up in
/// [`tb_triangulation_validate`].
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_parse(text: *const c_char, out: *mut *mut TbTriangulation) -> TbStatus {
    guard(|| {
        let t = parse(c_str(text, "text")?).map_err(lib)?;
        put(out, boxed(t))
    })
}

/// Named triangulation: `fig8`, `sibling`, `coneY`, `coneXZ` or `paperT`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_builtin(name: *const c_char, out: *mut *mut TbTriangulation) -> TbStatus {
    guard(|| {
        let b = builtin_by_name(c_str(name, "name")?).map_err(lib)?;
        put(out, boxed(b.data))
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_free(t: *mut TbTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Canonical text form; release with [`tb_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_serialize(t: *const TbTriangulation, out: *mut *mut c_char) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(out, owned_string(serialize(t)))
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes whether the triangulation passes validation. On failure the
/// defects are available from [`tb_last_error`] even though the call
/// returns `TB_STATUS_OK`.
///
/// # Safety
/// `t` must be a live handle; `valid_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_validate(t: *const TbTriangulation, valid_out: *mut bool) -> TbStatus {
    let mut summary = String::new();
    let status = guard(|| {
        let r = handle(t, "triangulation")?.validate();
        summary = r.summary();
        put(valid_out, r.valid)
    });
    if status == TbStatus::Ok && !summary.is_empty() && summary != "valid" {
        set_error(&summary);
    }
    status
}

/// # Safety
/// `t` must be a live handle; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_triangulation_shape(
    t: *const TbTriangulation,
    dimension: *mut usize,
    simplex_count: *mut usize,
    partial: *mut bool,
) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(dimension, t.dimension())?;
        put(simplex_count, t.simplex_count())?;
        put(partial, t.is_partial())
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_euler_characteristic(t: *const TbTriangulation, out: *mut i64) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(out, euler_characteristic(t).map_err(lib)?)
    })
}

/// Number of classes of `k`-faces.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_face_class_count(t: *const TbTriangulation, k: usize, out: *mut usize) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(out, face_classes(t, k).map_err(lib)?.count())
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_is_orientable(t: *const TbTriangulation, out: *mut bool) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(out, orient(t).map_err(lib)?.is_orientable())
    })
}

/// Whether every cycle of codimension-2 faces has length `required` and a
/// trivial return map.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_check_valence(t: *const TbTriangulation, required: usize, out: *mut bool) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        valid(t)?;
        put(out, check_valence(t, required).map_err(lib)?.passed)
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_isomorphic(a: *const TbTriangulation, b: *const TbTriangulation, out: *mut bool) -> TbStatus {
    guard(|| {
        let a = handle(a, "first triangulation")?;
        let b = handle(b, "second triangulation")?;
        valid(a)?;
        valid(b)?;
        put(out, isomorphism(a, b).map_err(lib)?.is_some())
    })
}

/// Cone with apex label `n+2`; the result is a new handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_cone(t: *const TbTriangulation, out: *mut *mut TbTriangulation) -> TbStatus {
    guard(|| {
        let t = handle(t, "triangulation")?;
        put(out, boxed(cone(t).map_err(lib)?))
    })
}

/// Runs the seven checks on the 4-dimensional construction. `report_json`
/// may be null; otherwise it receives the full report (free with
/// [`tb_string_free`]).
///
/// # Safety
/// `all_passed` must be writable; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_verify_paper(all_passed: *mut bool, report_json: *mut *mut c_char) -> TbStatus {
    guard(|| {
        let r = verify_paper_t();
        put(all_passed, r.all_passed)?;
        if !report_json.is_null() {
            report_json.write(owned_string(serde_json::to_string(&r).expect("report serializes")));
        }
        Ok(())
    })
}

unsafe fn modulus(text: *const c_char, epsilon: f64) -> Result<Modulus, (TbStatus, String)> {
    let eps = (epsilon > 0.0).then_some(epsilon);
    parse_modulus(c_str(text, "modulus")?, eps).map_err(lib)
}

/// Classifies a modulus such as `-1/2+1/2*sqrt(3)*i`. `epsilon > 0` forces
/// the floating path with that tolerance; otherwise exact input stays exact.
///
/// # Safety
/// `modulus_text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_cusp_classify(modulus_text: *const c_char, epsilon: f64, out: *mut TbShapeClass) -> TbStatus {
    guard(|| {
        let z = modulus(modulus_text, epsilon)?;
        let c = match classify_shape(&z).map_err(lib)? {
            ShapeClass::Rectangular => TbShapeClass::Rectangular,
            ShapeClass::Rhombic => TbShapeClass::Rhombic,
            ShapeClass::Generic => TbShapeClass::Generic,
        };
        put(out, c)
    })
}

fn tag(v: &Verdict) -> TbVerdict {
    match v.tag {
        VerdictTag::ObstructionViolated => TbVerdict::ObstructionViolated,
        VerdictTag::Inconclusive => TbVerdict::Inconclusive,
        VerdictTag::Inapplicable => TbVerdict::Inapplicable,
    }
}

/// Pairing obstruction over `count` cusp moduli. The verdict's reason is
/// left in [`tb_last_error`]'s buffer only on failure.
///
/// # Safety
/// `moduli` must point to `count` NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_cusp_obstruct(
    moduli: *const *const c_char,
    count: usize,
    epsilon: f64,
    out: *mut TbVerdict,
) -> TbStatus {
    guard(|| {
        if moduli.is_null() {
            return Err(null("moduli"));
        }
        let zs = (0..count)
            .map(|i| modulus(*moduli.add(i), epsilon))
            .collect::<Result<Vec<_>, _>>()?;
        put(out, tag(&pairing_obstruction_3d(&zs).map_err(lib)?))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_trace_field_obstruction(num_cusps: u64, degree: u64, out: *mut TbVerdict) -> TbStatus {
    guard(|| put(out, tag(&trace_field_obstruction(num_cusps, degree).map_err(lib)?)))
}

/// Excluded indices (-2, -1, 0, 1) return `TB_STATUS_INVALID_INPUT`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_twist_knot_verdict(m: i64, out: *mut TbVerdict) -> TbStatus {
    guard(|| put(out, tag(&twist_knot_verdict(m).map_err(lib)?.verdict)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_euler_parity_obstruction(n: i64, chi: i64, out: *mut TbVerdict) -> TbStatus {
    guard(|| put(out, tag(&euler_parity_obstruction(n, chi).map_err(lib)?)))
}
