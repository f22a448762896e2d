//! C ABI over `eqkh`.
//!
//! Diagrams live behind the opaque [`EqkhDiagram`] handle. Every fallible
//! call returns an [`EqkhStatus`]; on failure [`eqkh_last_error`] describes
//! the most recent error on the calling thread. Strings handed out by the
//! library must be released with [`eqkh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqkh::coeff::BaseRing;
use eqkh::complex::{CubeComplex, Reduction};
use eqkh::diagram::{parse_pd, LinkDiagram};
use eqkh::frobenius::{Theory, TheoryKind};
use eqkh::homology::homology;
use eqkh::lee::s_invariant;

/// Result codes. The nonzero values below 5 match the command line's exit
/// codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqkhStatus {
    Ok = 0,
    Failed = 1,
    Parse = 2,
    Scope = 3,
    Verification = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// A parsed link diagram.
pub struct EqkhDiagram(LinkDiagram);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &eqkh::Error) -> EqkhStatus {
    match e.exit_code() {
        2 => EqkhStatus::Parse,
        3 => EqkhStatus::Scope,
        4 => EqkhStatus::Verification,
        _ => EqkhStatus::Failed,
    }
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), EqkhStatus>) -> EqkhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EqkhStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            EqkhStatus::Panic
        }
    }
}

fn lib<T>(r: eqkh::Result<T>) -> Result<T, EqkhStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, EqkhStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(EqkhStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        EqkhStatus::InvalidUtf8
    })
}

unsafe fn diagram<'a>(d: *const EqkhDiagram) -> Result<&'a LinkDiagram, EqkhStatus> {
    if d.is_null() {
        set_error("diagram is null");
        return Err(EqkhStatus::NullArgument);
    }
    Ok(&(*d).0)
}

fn out_ptr<T>(out: *mut T) -> Result<(), EqkhStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        Err(EqkhStatus::NullArgument)
    } else {
        Ok(())
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).expect("JSON has no interior NUL").into_raw();
}

/// Message of the last error on this thread, or null. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn eqkh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a PD code such as `PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`.
///
/// # Safety
/// `pd` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_parse(pd: *const c_char, out: *mut *mut EqkhDiagram) -> EqkhStatus {
    guard(|| {
        out_ptr(out)?;
        let d = lib(parse_pd(text(pd, "pd")?))?;
        *out = Box::into_raw(Box::new(EqkhDiagram(d)));
        Ok(())
    })
}

/// Releases a diagram; null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_free(d: *mut EqkhDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The mirror image as a new diagram.
///
/// # Safety
/// `d` must be a live diagram and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_mirror(d: *const EqkhDiagram, out: *mut *mut EqkhDiagram) -> EqkhStatus {
    guard(|| {
        out_ptr(out)?;
        let m = diagram(d)?.mirror();
        *out = Box::into_raw(Box::new(EqkhDiagram(m)));
        Ok(())
    })
}

/// Number of crossings, or 0 for null.
///
/// # Safety
/// `d` must be null or a live diagram.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_crossings(d: *const EqkhDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.num_crossings())
}

/// Number of link components, or 0 for null.
///
/// # Safety
/// `d` must be null or a live diagram.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_components(d: *const EqkhDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.num_components())
}

/// Writhe, or 0 for null.
///
/// # Safety
/// `d` must be null or a live diagram.
#[no_mangle]
pub unsafe extern "C" fn eqkh_diagram_writhe(d: *const EqkhDiagram) -> i32 {
    d.as_ref().map_or(0, |d| d.0.writhe())
}

/// Homology as the JSON object of the `homology` command (`ring`, `theory`,
/// `reduced`, `summands`). `theory` and `field` take the command line's
/// spellings, e.g. `"u1"` and `"f2"`.
///
/// # Safety
/// `d` must be a live diagram, `theory` and `field` NUL-terminated strings,
/// and `out_json` a valid pointer; free the result with `eqkh_string_free`.
#[no_mangle]
pub unsafe extern "C" fn eqkh_homology_json(
    d: *const EqkhDiagram,
    theory: *const c_char,
    field: *const c_char,
    reduced: bool,
    out_json: *mut *mut c_char,
) -> EqkhStatus {
    guard(|| {
        out_ptr(out_json)?;
        let d = diagram(d)?;
        let kind = lib(TheoryKind::parse(text(theory, "theory")?))?;
        let base = lib(BaseRing::parse(text(field, "field")?))?;
        let th = lib(Theory::new(kind, base))?;
        let r = if reduced { Reduction::Lee } else { Reduction::Unreduced };
        let h = lib(homology(&lib(CubeComplex::build(d, &th, r))?))?;
        let mut v = h.module.to_json();
        v["theory"] = th.to_string().into();
        v["reduced"] = reduced.into();
        write_string(out_json, v.to_string());
        Ok(())
    })
}

/// The s-invariant of a knot over a field.
///
/// # Safety
/// `d` must be a live diagram, `field` a NUL-terminated string and `out_s` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqkh_s_invariant(d: *const EqkhDiagram, field: *const c_char, out_s: *mut i32) -> EqkhStatus {
    guard(|| {
        out_ptr(out_s)?;
        let base = lib(BaseRing::parse(text(field, "field")?))?;
        *out_s = lib(s_invariant(diagram(d)?, base))?.s;
        Ok(())
    })
}

/// The full s-invariant report as JSON, as in the `s` command.
///
/// # Safety
/// As for [`eqkh_s_invariant`]; free the result with `eqkh_string_free`.
#[no_mangle]
pub unsafe extern "C" fn eqkh_s_report_json(
    d: *const EqkhDiagram,
    field: *const c_char,
    out_json: *mut *mut c_char,
) -> EqkhStatus {
    guard(|| {
        out_ptr(out_json)?;
        let base = lib(BaseRing::parse(text(field, "field")?))?;
        let r = lib(s_invariant(diagram(d)?, base))?;
        write_string(out_json, serde_json::to_string(&r).expect("serializable report"));
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eqkh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn eqkh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
