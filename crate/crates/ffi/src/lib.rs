//! C ABI over `cuntz-endo`.
//!
//! Elements cross the boundary as opaque `CeElement` handles. Every call
//! returns a `CeStatus`; on failure `ce_last_error` gives a message for the
//! calling thread. Strings handed out must be released with `ce_string_free`,
//! handles with `ce_element_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cuntz_endo::endo::{compose_endos, lambda_apply};
use cuntz_endo::io::{element_from_str, element_to_string};
use cuntz_endo::izumi::{izumi_beta, izumi_unitary, FiniteAbelianGroup};
use cuntz_endo::masa::{decide_diagonal_invariance, standard_masa_invariance};
use cuntz_endo::matrix::is_unitary;
use cuntz_endo::{Config, Element, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    Domain = 4,
    Resource = 5,
    Parse = 6,
    Io = 7,
    Panic = 8,
}

/// Tolerance and size caps. `ce_config_default` fills in the library defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CeConfig {
    pub eps: f64,
    pub max_terms: usize,
    pub max_level: usize,
}

impl From<CeConfig> for Config {
    fn from(c: CeConfig) -> Self {
        Config {
            eps: c.eps,
            max_terms: c.max_terms,
            max_level: c.max_level,
        }
    }
}

/// Opaque element handle.
pub struct CeElement {
    inner: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(CeStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Usage(_) => CeStatus::Usage,
            Error::Domain(_) => CeStatus::Domain,
            Error::Resource { .. } => CeStatus::Resource,
            Error::Parse(_) => CeStatus::Parse,
            Error::Io(_) => CeStatus::Io,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CeStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CeStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(p: *const CeElement, what: &str) -> Result<&'a Element, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn config(p: *const CeConfig) -> Config {
    p.as_ref().map(|c| Config::from(*c)).unwrap_or_default()
}

unsafe fn put_element(out: *mut *mut CeElement, x: Element) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(CeElement { inner: x }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

unsafe fn put_bool(out: *mut bool, v: bool) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = v;
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ce_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn ce_config_default() -> CeConfig {
    let c = Config::default();
    CeConfig {
        eps: c.eps,
        max_terms: c.max_terms,
        max_level: c.max_level,
    }
}

/// Parses the element JSON format.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_element_from_json(json: *const c_char, out: *mut *mut CeElement) -> CeStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let s = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(CeStatus::InvalidUtf8, e.to_string()))?;
        put_element(out, element_from_str(s)?)
    })
}

/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_element_to_json(x: *const CeElement, out: *mut *mut c_char) -> CeStatus {
    guard(|| put_string(out, element_to_string(handle(x, "x")?)))
}

/// # Safety
/// `x` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ce_element_free(x: *mut CeElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of generators, 0 for a null handle.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ce_element_n(x: *const CeElement) -> usize {
    x.as_ref().map_or(0, |h| h.inner.n())
}

/// # Safety
/// Handles must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_element_mul(
    a: *const CeElement,
    b: *const CeElement,
    cfg: *const CeConfig,
    out: *mut *mut CeElement,
) -> CeStatus {
    guard(|| {
        let prod = handle(a, "a")?.mul(handle(b, "b")?, &config(cfg))?;
        put_element(out, prod)
    })
}

/// # Safety
/// `x` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_element_adjoint(x: *const CeElement, out: *mut *mut CeElement) -> CeStatus {
    guard(|| put_element(out, handle(x, "x")?.adjoint()))
}

/// Coefficient-wise comparison within `eps`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_element_equals(
    a: *const CeElement,
    b: *const CeElement,
    eps: f64,
    out: *mut bool,
) -> CeStatus {
    guard(|| put_bool(out, handle(a, "a")?.equals_within(handle(b, "b")?, eps)))
}

/// `λ_u(x)`.
///
/// # Safety
/// Handles must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_lambda_apply(
    u: *const CeElement,
    x: *const CeElement,
    cfg: *const CeConfig,
    out: *mut *mut CeElement,
) -> CeStatus {
    guard(|| {
        let y = lambda_apply(handle(u, "u")?, handle(x, "x")?, &config(cfg))?;
        put_element(out, y)
    })
}

/// Unitary of `λ_u ∘ λ_w`.
///
/// # Safety
/// Handles must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_compose(
    u: *const CeElement,
    w: *const CeElement,
    cfg: *const CeConfig,
    out: *mut *mut CeElement,
) -> CeStatus {
    guard(|| {
        let y = compose_endos(handle(u, "u")?, handle(w, "w")?, &config(cfg))?;
        put_element(out, y)
    })
}

/// # Safety
/// `x` must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_is_unitary(
    x: *const CeElement,
    cfg: *const CeConfig,
    out: *mut bool,
) -> CeStatus {
    guard(|| {
        let x = handle(x, "x")?;
        let cfg = config(cfg);
        let v = if x.is_degree_zero() {
            is_unitary(x, x.level(), &cfg)?
        } else {
            x.is_unitary_algebraic(&cfg)?
        };
        put_bool(out, v)
    })
}

/// Decision report for `λ_w(D_n) ⊆ D_n` as JSON. `k = 0` uses the level of `w`.
///
/// # Safety
/// `w` must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_decide(
    w: *const CeElement,
    k: usize,
    cfg: *const CeConfig,
    out: *mut *mut c_char,
) -> CeStatus {
    guard(|| {
        let w = handle(w, "w")?;
        let k = if k == 0 { w.level().max(1) } else { k };
        let report = decide_diagonal_invariance(w, k, &config(cfg))?;
        put_string(out, report.to_json())
    })
}

/// Decision report for `λ_u(λ_z(D_n)) ⊆ λ_z(D_n)` as JSON.
///
/// # Safety
/// Handles must be live; `cfg` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_standard_masa_invariance(
    u: *const CeElement,
    z: *const CeElement,
    cfg: *const CeConfig,
    out: *mut *mut c_char,
) -> CeStatus {
    guard(|| {
        let report = standard_masa_invariance(handle(u, "u")?, handle(z, "z")?, &config(cfg))?;
        put_string(out, report.to_json())
    })
}

unsafe fn group(orders: *const usize, len: usize) -> Result<FiniteAbelianGroup, Fail> {
    if orders.is_null() {
        return Err(null("orders"));
    }
    Ok(FiniteAbelianGroup::new(
        std::slice::from_raw_parts(orders, len).to_vec(),
    )?)
}

/// Izumi unitary for `ℤ_{orders[0]} × ⋯`.
///
/// # Safety
/// `orders` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_izumi_unitary(
    orders: *const usize,
    len: usize,
    out: *mut *mut CeElement,
) -> CeStatus {
    guard(|| put_element(out, izumi_unitary(&group(orders, len)?)))
}

/// The Fourier unitary `β` of the same group.
///
/// # Safety
/// `orders` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_izumi_beta(
    orders: *const usize,
    len: usize,
    out: *mut *mut CeElement,
) -> CeStatus {
    guard(|| put_element(out, izumi_beta(&group(orders, len)?)))
}
