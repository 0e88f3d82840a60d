//! C ABI over `schober-forge`.
//!
//! Ice quivers with potential cross the boundary as opaque `SfQp` handles.
//! Every fallible call returns an `SfStatus`; on failure the message is
//! available from `sf_last_error` until the next call on the same thread.
//! Strings returned by the library are freed with `sf_string_free`, handles
//! with `sf_qp_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schober_forge::clustercalc::{min_cofiber, min_fiber, shift_object, ClusterObject};
use schober_forge::dgpres::check_d_squared;
use schober_forge::dynkin::{rank_cap, DynkinType};
use schober_forge::ginzburg::ginzburg;
use schober_forge::qcore::{export_dot, export_json, import_json, quiver_isomorphic, IceQuiverWP};
use schober_forge::surface::{polygon_ribbon, surface_qp};
use schober_forge::triangle::{triangle_qp, triangle_qp_grid};
use schober_forge::verify::{parse_suites, run_suites, VerifyOptions};
use schober_forge::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad type tag, bad JSON, invalid UTF-8.
    Parse = 2,
    /// Input outside the domain of the operation.
    Domain = 3,
    /// Operation not available for this input, or rank cap exceeded.
    Unsupported = 4,
    /// Structural failure inside the library.
    Internal = 5,
    /// A verification ran and failed.
    VerificationFailed = 6,
}

/// Opaque ice quiver with potential.
pub struct SfQp {
    inner: IceQuiverWP,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SfQpCounts {
    pub vertices: usize,
    pub arrows: usize,
    pub frozen_vertices: usize,
    pub frozen_arrows: usize,
    pub potential_terms: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::Parse(_) => SfStatus::Parse,
        Error::Unsupported(_) | Error::RankCap(_) => SfStatus::Unsupported,
        Error::Structural(_) | Error::Composition(_) | Error::NotDgMap(_) | Error::IncompleteMap(_) => SfStatus::Internal,
        _ => SfStatus::Domain,
    }
}

type Outcome = Result<(), (SfStatus, String)>;

fn lib(e: Error) -> (SfStatus, String) {
    (status_of(&e), e.to_string())
}

/// Runs `f`, converting errors and panics into a status plus last-error message.
fn guard(f: impl FnOnce() -> Outcome) -> SfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("panic inside schober-forge");
            SfStatus::Internal
        }
    }
}

fn null() -> (SfStatus, String) {
    (SfStatus::NullArgument, "null argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (SfStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| (SfStatus::Parse, e.to_string()))
}

unsafe fn read_type(p: *const c_char) -> Result<DynkinType, (SfStatus, String)> {
    let t: DynkinType = read_str(p)?.parse().map_err(lib)?;
    t.with_cap(rank_cap()).map_err(lib)
}

unsafe fn qp_ref<'a>(p: *const SfQp) -> Result<&'a IceQuiverWP, (SfStatus, String)> {
    p.as_ref().map(|q| &q.inner).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_qp(out: *mut *mut SfQp, x: IceQuiverWP) -> Outcome {
    put(out, Box::into_raw(Box::new(SfQp { inner: x })))
}

unsafe fn put_string(out: *mut *mut c_char, bytes: Vec<u8>) -> Outcome {
    let c = CString::new(bytes).map_err(|e| (SfStatus::Internal, e.to_string()))?;
    put(out, c.into_raw())
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Basic triangle QP of the Dynkin type `ty` (e.g. "A3"); `grid` selects the
/// grid construction, available in type A.
///
/// # Safety
/// `ty` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_triangle_qp(ty: *const c_char, grid: bool, out: *mut *mut SfQp) -> SfStatus {
    guard(|| {
        let t = read_type(ty)?;
        let tq = match (grid, t) {
            (false, _) => triangle_qp(t).map_err(lib)?,
            (true, DynkinType::A(n)) => triangle_qp_grid(n).map_err(lib)?,
            (true, _) => return Err((SfStatus::Unsupported, format!("grid construction needs type A, got {t}"))),
        };
        put_qp(out, tq.qp)
    })
}

/// Glued QP of the fan triangulation of an `n`-gon.
///
/// # Safety
/// `ty` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_polygon(n: usize, ty: *const c_char, out: *mut *mut SfQp) -> SfStatus {
    guard(|| {
        let t = read_type(ty)?;
        let (g, d) = polygon_ribbon(n).map_err(lib)?;
        put_qp(out, surface_qp(&g, &d, t).map_err(lib)?.qp)
    })
}

/// Parses an ice QP from `len` bytes of JSON.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_import_json(data: *const u8, len: usize, out: *mut *mut SfQp) -> SfStatus {
    guard(|| {
        if data.is_null() {
            return Err(null());
        }
        let bytes = std::slice::from_raw_parts(data, len);
        put_qp(out, import_json(bytes).map_err(lib)?)
    })
}

/// Canonical JSON of `qp` as a new string.
///
/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_export_json(qp: *const SfQp, out: *mut *mut c_char) -> SfStatus {
    guard(|| put_string(out, export_json(qp_ref(qp)?).map_err(lib)?))
}

/// DOT rendering of `qp` as a new string.
///
/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_export_dot(qp: *const SfQp, out: *mut *mut c_char) -> SfStatus {
    guard(|| put_string(out, export_dot(qp_ref(qp)?)))
}

/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_counts(qp: *const SfQp, out: *mut SfQpCounts) -> SfStatus {
    guard(|| {
        let x = qp_ref(qp)?;
        put(
            out,
            SfQpCounts {
                vertices: x.quiver.num_vertices(),
                arrows: x.quiver.num_arrows(),
                frozen_vertices: x.frozen_vertices.len(),
                frozen_arrows: x.frozen_arrows.len(),
                potential_terms: x.potential.len(),
            },
        )
    })
}

/// Builds the Ginzburg presentation of `qp` and checks `d² = 0`; returns
/// `SF_STATUS_VERIFICATION_FAILED` if it does not hold.
///
/// # Safety
/// `qp` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_ginzburg_check(qp: *const SfQp) -> SfStatus {
    guard(|| {
        let g = ginzburg(qp_ref(qp)?).map_err(lib)?;
        let r = check_d_squared(&g.dg).map_err(lib)?;
        if r.passed() {
            Ok(())
        } else {
            Err((SfStatus::VerificationFailed, format!("d² ≠ 0 on {} generators", r.failures.len())))
        }
    })
}

/// Writes whether `a` and `b` are isomorphic ice QPs. With
/// `allow_dual_rescale`, dual arrows may be negated.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_isomorphic(
    a: *const SfQp,
    b: *const SfQp,
    compare_potential: bool,
    allow_dual_rescale: bool,
    out: *mut bool,
) -> SfStatus {
    guard(|| {
        let w = quiver_isomorphic(qp_ref(a)?, qp_ref(b)?, compare_potential, allow_dual_rescale);
        put(out, w.is_some())
    })
}

/// Suspension of the indecomposable `label` in the 1-cluster category.
///
/// # Safety
/// `ty` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_cluster_shift(ty: *const c_char, label: usize, out: *mut usize) -> SfStatus {
    guard(|| {
        let t = read_type(ty)?;
        let x = shift_object(t, &ClusterObject::indecomposable(label)).map_err(lib)?;
        put(out, x.as_indecomposable().expect("shift of an indecomposable"))
    })
}

/// Cofiber of the minimal morphism `i → j` in type `A_n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_cluster_cofiber(n: usize, i: usize, j: usize, out: *mut usize) -> SfStatus {
    guard(|| put(out, min_cofiber(n, i, j).map_err(lib)?.as_indecomposable().expect("indecomposable")))
}

/// Fiber of the minimal morphism `i → j` in type `A_n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_cluster_fiber(n: usize, i: usize, j: usize, out: *mut usize) -> SfStatus {
    guard(|| put(out, min_fiber(n, i, j).map_err(lib)?.as_indecomposable().expect("indecomposable")))
}

/// Runs a verification suite (`"all"` or a suite name) and writes the number
/// of failing checks to `failures`. A nonzero count also yields
/// `SF_STATUS_VERIFICATION_FAILED`, with the failure records as the last error.
///
/// # Safety
/// `suite` must be a valid C string; `failures` may be null.
#[no_mangle]
pub unsafe extern "C" fn sf_verify(suite: *const c_char, long: bool, failures: *mut usize) -> SfStatus {
    guard(|| {
        let suites = parse_suites(read_str(suite)?).map_err(lib)?;
        let r = run_suites(&suites, &VerifyOptions { long, ..VerifyOptions::default() });
        let count = r.outcomes.iter().filter(|o| !o.passed).count();
        if !failures.is_null() {
            failures.write(count);
        }
        if count == 0 {
            Ok(())
        } else {
            Err((SfStatus::VerificationFailed, r.failure_lines()))
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `qp` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_qp_free(qp: *mut SfQp) {
    if !qp.is_null() {
        drop(Box::from_raw(qp));
    }
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
