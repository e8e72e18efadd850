//! C ABI over `confspace`.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns a [`CsStatus`]; on failure the message is
//! kept per thread and read with [`cs_last_error`]. Strings handed out by
//! the library are freed with [`cs_string_free`]. Indices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use confspace::canonical::{alpha, membership_canonical, tree_of};
use confspace::io::{
    ambient_from_json, ambient_to_json, config_from_json, config_to_json, parse,
    simplicial_from_json, simplicial_to_json, to_json_string, tree_from_json, tree_to_json,
};
use confspace::point::{AmbientPoint, Configuration, SimplicialPoint};
use confspace::simplicial::{membership_simplicial, project_q, reconstruct_rho};
use confspace::tree::{count_trees, FTree, Variant};
use confspace::verdict::{Manifold, Verdict};
use confspace::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BufferTooSmall = 3,
    Panic = 4,
    Tree = 10,
    Duplicate = 11,
    Dimension = 12,
    NonFinite = 13,
    NonUnit = 14,
    Index = 15,
    ScaleBound = 16,
    NotNormalized = 17,
    OutsideChart = 18,
    Exclusions = 19,
    NoIntersection = 20,
    Parameter = 21,
    NotMonotone = 22,
    NotPlanar = 23,
    Malformed = 24,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CsVariant {
    Full = 0,
    Trunk = 1,
    Planar = 2,
}

/// A finite configuration of distinct points.
pub struct CsConfig(Configuration);
/// A point of the canonical compactification.
pub struct CsAmbient(AmbientPoint);
/// A point of the simplicial compactification.
pub struct CsSimplicial(SimplicialPoint);
/// A stratum label.
pub struct CsTree(FTree);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CsStatus {
    match e {
        Error::Tree(_) => CsStatus::Tree,
        Error::Duplicate(..) => CsStatus::Duplicate,
        Error::Dimension { .. } => CsStatus::Dimension,
        Error::NonFinite => CsStatus::NonFinite,
        Error::NonUnit(_) => CsStatus::NonUnit,
        Error::Index { .. } => CsStatus::Index,
        Error::ScaleBound { .. } => CsStatus::ScaleBound,
        Error::NotNormalized(_) => CsStatus::NotNormalized,
        Error::OutsideChart => CsStatus::OutsideChart,
        Error::Exclusions => CsStatus::Exclusions,
        Error::NoIntersection => CsStatus::NoIntersection,
        Error::Parameter(_) => CsStatus::Parameter,
        Error::NotMonotone => CsStatus::NotMonotone,
        Error::NotPlanar => CsStatus::NotPlanar,
        Error::Malformed(_) => CsStatus::Malformed,
    }
}

struct Fail(CsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<T>(slot: *mut *mut T, value: T) -> Result<(), Fail> {
    if slot.is_null() {
        return Err(null("output"));
    }
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(CsStatus::InvalidUtf8, e.to_string()))
}

unsafe fn give_string(slot: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if slot.is_null() {
        return Err(null("output"));
    }
    *slot = CString::new(s).expect("JSON has no nul").into_raw();
    Ok(())
}

unsafe fn give_verdict(v: &Verdict, pass: *mut bool, max_residual: *mut f64) -> Result<(), Fail> {
    if pass.is_null() {
        return Err(null("pass"));
    }
    *pass = v.pass();
    if !max_residual.is_null() {
        *max_residual = v.max_residual;
    }
    Ok(())
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a configuration from `n * m` row-major coordinates.
///
/// # Safety
/// `coords` must point to `n * m` doubles; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_config_new(
    m: usize,
    n: usize,
    coords: *const f64,
    result: *mut *mut CsConfig,
) -> CsStatus {
    guard(|| {
        if coords.is_null() && n * m > 0 {
            return Err(null("coords"));
        }
        let flat = if n * m == 0 { &[][..] } else { std::slice::from_raw_parts(coords, n * m) };
        let pts = flat.chunks(m.max(1)).take(n).map(<[f64]>::to_vec).collect();
        out(result, CsConfig(Configuration::new(m, pts)?))
    })
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cs_config_free(c: *mut CsConfig) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cs_config_n(c: *const CsConfig) -> usize {
    c.as_ref().map_or(0, |c| c.0.n())
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cs_config_m(c: *const CsConfig) -> usize {
    c.as_ref().map_or(0, |c| c.0.m())
}

/// Copies the `n * m` row-major coordinates into `buf`.
///
/// # Safety
/// `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cs_config_coords(c: *const CsConfig, buf: *mut f64, len: usize) -> CsStatus {
    guard(|| {
        let c = borrow(c, "config")?;
        let need = c.0.n() * c.0.m();
        if len < need {
            return Err(Fail(CsStatus::BufferTooSmall, format!("need {need} doubles")));
        }
        if need > 0 && buf.is_null() {
            return Err(null("buffer"));
        }
        for (k, x) in c.0.points().iter().flatten().enumerate() {
            *buf.add(k) = *x;
        }
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_config_to_json(c: *const CsConfig, result: *mut *mut c_char) -> CsStatus {
    guard(|| give_string(result, to_json_string(&config_to_json(&borrow(c, "config")?.0))))
}

/// # Safety
/// `json` must be a nul-terminated string; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_config_from_json(json: *const c_char, result: *mut *mut CsConfig) -> CsStatus {
    guard(|| out(result, CsConfig(config_from_json(&parse(text(json)?)?)?)))
}

/// # Safety
/// `c` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_alpha(c: *const CsConfig, result: *mut *mut CsAmbient) -> CsStatus {
    guard(|| out(result, CsAmbient(alpha(&borrow(c, "config")?.0))))
}

/// # Safety
/// `a` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cs_ambient_free(a: *mut CsAmbient) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_ambient_to_json(a: *const CsAmbient, result: *mut *mut c_char) -> CsStatus {
    guard(|| give_string(result, to_json_string(&ambient_to_json(&borrow(a, "point")?.0))))
}

/// # Safety
/// `json` must be a nul-terminated string; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_ambient_from_json(json: *const c_char, result: *mut *mut CsAmbient) -> CsStatus {
    guard(|| out(result, CsAmbient(ambient_from_json(&parse(text(json)?)?)?)))
}

/// Checks membership in the canonical compactification of Euclidean
/// space of the point's dimension. `max_residual` may be null.
///
/// # Safety
/// `a` must be a live handle; `pass` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_membership_canonical(
    a: *const CsAmbient,
    tol: f64,
    pass: *mut bool,
    max_residual: *mut f64,
) -> CsStatus {
    guard(|| {
        let a = &borrow(a, "point")?.0;
        give_verdict(&membership_canonical(a, Manifold::Euclidean(a.m()), tol), pass, max_residual)
    })
}

/// # Safety
/// `a` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_tree_of(a: *const CsAmbient, tol: f64, result: *mut *mut CsTree) -> CsStatus {
    guard(|| out(result, CsTree(tree_of(&borrow(a, "point")?.0, tol)?)))
}

/// # Safety
/// `a` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_project_q(a: *const CsAmbient, result: *mut *mut CsSimplicial) -> CsStatus {
    guard(|| out(result, CsSimplicial(project_q(&borrow(a, "point")?.0))))
}

/// # Safety
/// `p` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cs_simplicial_free(p: *mut CsSimplicial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_simplicial_to_json(p: *const CsSimplicial, result: *mut *mut c_char) -> CsStatus {
    guard(|| give_string(result, to_json_string(&simplicial_to_json(&borrow(p, "point")?.0))))
}

/// # Safety
/// `json` must be a nul-terminated string; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_simplicial_from_json(
    json: *const c_char,
    result: *mut *mut CsSimplicial,
) -> CsStatus {
    guard(|| out(result, CsSimplicial(simplicial_from_json(&parse(text(json)?)?)?)))
}

/// # Safety
/// `p` must be a live handle; `pass` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_membership_simplicial(
    p: *const CsSimplicial,
    tol: f64,
    pass: *mut bool,
    max_residual: *mut f64,
) -> CsStatus {
    guard(|| {
        let p = &borrow(p, "point")?.0;
        give_verdict(&membership_simplicial(p, Manifold::Euclidean(p.m()), tol), pass, max_residual)
    })
}

/// # Safety
/// `p` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_reconstruct_rho(
    p: *const CsSimplicial,
    tol: f64,
    result: *mut *mut CsConfig,
) -> CsStatus {
    guard(|| out(result, CsConfig(reconstruct_rho(&borrow(p, "point")?.0, tol)?)))
}

/// # Safety
/// `t` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cs_tree_free(t: *mut CsTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cs_tree_codim(t: *const CsTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.codim())
}

/// # Safety
/// `t` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_tree_to_json(t: *const CsTree, result: *mut *mut c_char) -> CsStatus {
    guard(|| give_string(result, to_json_string(&tree_to_json(&borrow(t, "tree")?.0))))
}

/// # Safety
/// `json` must be a nul-terminated string; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_tree_from_json(json: *const c_char, result: *mut *mut CsTree) -> CsStatus {
    guard(|| out(result, CsTree(tree_from_json(&parse(text(json)?)?)?)))
}

/// # Safety
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_count_trees(n: usize, variant: CsVariant, result: *mut usize) -> CsStatus {
    guard(|| {
        if result.is_null() {
            return Err(null("output"));
        }
        let v = match variant {
            CsVariant::Full => Variant::Full,
            CsVariant::Trunk => Variant::Trunk,
            CsVariant::Planar => Variant::Planar,
        };
        *result = count_trees(n, v).map_err(Error::from)?;
        Ok(())
    })
}

/// Writes the `n + 1` face counts of the `n`-dimensional associahedron.
///
/// # Safety
/// `buf` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn cs_f_vector(n: usize, buf: *mut usize, len: usize) -> CsStatus {
    guard(|| {
        let f = confspace::assoc::f_vector(n)?;
        if len < f.len() {
            return Err(Fail(CsStatus::BufferTooSmall, format!("need {} entries", f.len())));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len());
        Ok(())
    })
}
