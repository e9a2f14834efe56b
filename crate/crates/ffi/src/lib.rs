//! C ABI for `iotacx`.
//!
//! Complexes cross the boundary as opaque [`IcxComplex`] handles. Every
//! function returns an [`IcxStatus`]; on failure a message is available from
//! [`icx_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with [`icx_string_free`];
//! handles are released with [`icx_complex_free`]. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iotacx::cli::{deserialize, run_yn_pipeline, ComplexDocument};
use iotacx::equivalence::{
    iota_k_equivalent, is_equivalent, standard_complex, standard_rep_search, SearchBounds, Sign, StandardParams,
};
use iotacx::group::{sf_member, simplified_sum_params, SignedCnTerm};
use iotacx::involutive::{a0_subcomplex, dual, tensor_iota, tensor_iota_k, Mode, VerifyInvolution};
use iotacx::knots::{box_complex, staircase, torus_alexander, StaircaseSpec};
use iotacx::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    NotFound = 4,
    OutOfScope = 5,
    Internal = 6,
}

/// An opaque complex: a knot complex over F2[U,V] or an ι-complex over F2[U].
pub struct IcxComplex(ComplexDocument);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(IcxStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => IcxStatus::Parse,
            Error::NotFound(_) => IcxStatus::NotFound,
            Error::OutOfScope(_) => IcxStatus::OutOfScope,
            _ => IcxStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(IcxStatus::InvalidInput, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IcxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IcxStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            IcxStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(IcxStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const IcxComplex, what: &str) -> Result<&'a ComplexDocument, Fail> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| Fail(IcxStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(IcxStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_complex(out: *mut *mut IcxComplex, doc: ComplexDocument) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(IcxStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(IcxComplex(doc))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(IcxStatus::Internal, "string contains NUL".into()))?;
    if out.is_null() {
        return Err(Fail(IcxStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

fn mode(almost: bool) -> Mode {
    if almost {
        Mode::Almost
    } else {
        Mode::Strict
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn icx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn icx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a complex. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn icx_complex_free(c: *mut IcxComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses a document in the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_complex_parse(text: *const c_char, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| put_complex(out, deserialize(str_arg(text, "text")?)?))
}

/// Canonical text of a complex.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_complex_to_text(c: *const IcxComplex, out: *mut *mut c_char) -> IcxStatus {
    guard(|| put_string(out, handle(c, "complex")?.to_text()))
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn icx_complex_len(c: *const IcxComplex) -> usize {
    match c.as_ref().map(|c| &c.0) {
        Some(ComplexDocument::Knot(k)) => k.len(),
        Some(ComplexDocument::Iota(k)) => k.len(),
        None => 0,
    }
}

/// Whether the complex is over F2[U,V].
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn icx_complex_is_knot(c: *const IcxComplex) -> bool {
    matches!(c.as_ref().map(|c| &c.0), Some(ComplexDocument::Knot(_)))
}

/// Staircase complex of the torus knot T(p,q).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_torus_cfk(p: u32, q: u32, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| {
        let spec = StaircaseSpec::from_polynomial(&torus_alexander(p, q)?)?;
        put_complex(out, ComplexDocument::Knot(staircase(&spec)))
    })
}

/// The box complex for `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_box(n: u32, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| put_complex(out, ComplexDocument::Knot(box_complex(n)?)))
}

/// The standard complex with parameters like `"+,-1,+,-2"`.
///
/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_standard(params: *const c_char, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| {
        let p: StandardParams = str_arg(params, "params")?.parse()?;
        put_complex(out, ComplexDocument::Iota(standard_complex(&p)))
    })
}

/// Tensor product of two complexes over the same ring.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_tensor(
    a: *const IcxComplex,
    b: *const IcxComplex,
    out: *mut *mut IcxComplex,
) -> IcxStatus {
    guard(|| {
        let doc = match (handle(a, "a")?, handle(b, "b")?) {
            (ComplexDocument::Knot(x), ComplexDocument::Knot(y)) => ComplexDocument::Knot(tensor_iota_k(x, y)),
            (ComplexDocument::Iota(x), ComplexDocument::Iota(y)) => ComplexDocument::Iota(tensor_iota(x, y)),
            _ => return Err(invalid("complexes are over different rings")),
        };
        put_complex(out, doc)
    })
}

/// Dual complex.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_dual(a: *const IcxComplex, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| {
        let doc = match handle(a, "a")? {
            ComplexDocument::Knot(x) => ComplexDocument::Knot(dual(x)),
            ComplexDocument::Iota(x) => ComplexDocument::Iota(dual(x)),
        };
        put_complex(out, doc)
    })
}

/// Alexander-grading-zero subcomplex of a knot complex.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_a0(a: *const IcxComplex, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| match handle(a, "a")? {
        ComplexDocument::Knot(x) => put_complex(out, ComplexDocument::Iota(a0_subcomplex(x)?)),
        ComplexDocument::Iota(_) => Err(invalid("A0 needs a knot complex")),
    })
}

/// Cancels every unit entry of the differential.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_reduce(a: *const IcxComplex, out: *mut *mut IcxComplex) -> IcxStatus {
    guard(|| {
        let doc = match handle(a, "a")? {
            ComplexDocument::Knot(x) => ComplexDocument::Knot(x.cancel_reduce()),
            ComplexDocument::Iota(x) => ComplexDocument::Iota(x.cancel_reduce()),
        };
        put_complex(out, doc)
    })
}

/// Checks the involution axioms; the verdict goes to `ok`.
///
/// # Safety
/// `c` must be a live handle; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_verify(c: *const IcxComplex, almost: bool, ok: *mut bool) -> IcxStatus {
    guard(|| {
        let v = match handle(c, "complex")? {
            ComplexDocument::Knot(x) => x.verify_involution(mode(almost)).is_ok(),
            ComplexDocument::Iota(x) => x.verify_involution(mode(almost)).is_ok(),
        };
        put(ok, v)
    })
}

/// Decides (almost) local equivalence; the verdict goes to `ok`. `almost` is
/// ignored for knot complexes.
///
/// # Safety
/// `a`, `b` must be live handles; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_equivalent(
    a: *const IcxComplex,
    b: *const IcxComplex,
    almost: bool,
    ok: *mut bool,
) -> IcxStatus {
    guard(|| {
        let v = match (handle(a, "a")?, handle(b, "b")?) {
            (ComplexDocument::Knot(x), ComplexDocument::Knot(y)) => iota_k_equivalent(x, y).is_some(),
            (ComplexDocument::Iota(x), ComplexDocument::Iota(y)) => is_equivalent(x, y, mode(almost)).is_some(),
            _ => return Err(invalid("complexes are over different rings")),
        };
        put(ok, v)
    })
}

/// Standard parameters of an ι-complex, as text like `"+,-1,+,-2"`.
/// Returns `NOT_FOUND` when the bounds are exhausted.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_standard_rep(
    c: *const IcxComplex,
    max_steps: usize,
    max_weight: u32,
    out: *mut *mut c_char,
) -> IcxStatus {
    guard(|| {
        let ComplexDocument::Iota(x) = handle(c, "complex")? else {
            return Err(invalid("standard representatives need a complex over F2[U]"));
        };
        let p = standard_rep_search(x, SearchBounds::new(max_steps, max_weight)?)
            .ok_or_else(|| Fail(IcxStatus::NotFound, "no standard complex within the bounds".into()))?;
        put_string(out, p.to_string())
    })
}

/// Parameters of a sum of C(n) terms written like `"+3,-2"`.
///
/// # Safety
/// `terms` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_sum_params(terms: *const c_char, out: *mut *mut c_char) -> IcxStatus {
    guard(|| {
        let mut list = Vec::new();
        for tok in str_arg(terms, "terms")?.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (sign, rest) = match tok.strip_prefix('-') {
                Some(r) => (Sign::Minus, r),
                None => (Sign::Plus, tok.strip_prefix('+').unwrap_or(tok)),
            };
            let n: u32 = rest.parse().map_err(|_| invalid(format!("bad term {tok:?}")))?;
            list.push(SignedCnTerm::new(sign, n)?);
        }
        put_string(out, simplified_sum_params(&list)?.to_string())
    })
}

/// Whether parameters lie in the Seifert fibered image.
///
/// # Safety
/// `params` must be a NUL-terminated string; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_sf_member(params: *const c_char, ok: *mut bool) -> IcxStatus {
    guard(|| {
        let p: StandardParams = str_arg(params, "params")?.parse()?;
        put(ok, sf_member(&p))
    })
}

/// Standard parameters and SF verdict for `Y_n`.
///
/// # Safety
/// `params` and `sf` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icx_yn(
    n: u32,
    max_steps: usize,
    max_weight: u32,
    params: *mut *mut c_char,
    sf: *mut bool,
) -> IcxStatus {
    guard(|| {
        if params.is_null() || sf.is_null() {
            return Err(Fail(IcxStatus::NullPointer, "output pointer is null".into()));
        }
        let r = run_yn_pipeline(n, SearchBounds::new(max_steps, max_weight)?, false)?;
        put(sf, r.sf)?;
        put_string(params, r.params.to_string())
    })
}
