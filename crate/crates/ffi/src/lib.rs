//! C ABI for `poisson-core`.
//!
//! Objects are opaque handles created by `*_from_json` constructors and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PoissonStatus`]; on failure a description is available from
//! [`poisson_last_error_message`] until the next call on the same thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`poisson_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use poisson_core::cli::verdict_json;
use poisson_core::io::{
    parse_point, parse_structure, BivectorFile, LieAlgebraFile, StructureInput,
};
use poisson_core::liealg::LieAlgebra;
use poisson_core::linalg::{int, Rational};
use poisson_core::poisson::PoissonStructure as Structure;
use poisson_core::stability::classify_fixed_point;
use poisson_core::Error;

/// Status codes. Nonzero values other than `InvalidArgument` match the exit
/// codes of the `poisson` command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoissonStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or an out-of-range argument.
    InvalidArgument = 1,
    /// Malformed JSON or a malformed field.
    ParseError = 2,
    /// A mathematical precondition failed: Jacobi identity, `[pi, pi] = 0`,
    /// or the point is not a fixed point.
    Precondition = 3,
    Internal = 4,
}

/// A Lie algebra with validated structure constants.
pub struct PoissonLieAlgebra {
    inner: LieAlgebra,
}

/// A certified Poisson bivector on `R^n` with polynomial coefficients.
pub struct PoissonStructure {
    inner: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: PoissonStatus, message: &str) -> PoissonStatus {
    set_last_error(message);
    status
}

fn from_error(e: &Error) -> PoissonStatus {
    let status = match e.exit_code() {
        2 => PoissonStatus::ParseError,
        3 => PoissonStatus::Precondition,
        _ => PoissonStatus::Internal,
    };
    fail(status, &e.to_string())
}

/// Clears the last error, runs `f` and converts panics to `Internal`.
fn guard(f: impl FnOnce() -> PoissonStatus) -> PoissonStatus {
    set_last_error("");
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(PoissonStatus::Internal, "panic inside poisson-ffi"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, PoissonStatus> {
    if p.is_null() {
        return Err(fail(
            PoissonStatus::InvalidArgument,
            &format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            PoissonStatus::InvalidArgument,
            &format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, PoissonStatus> {
    p.as_ref()
        .ok_or_else(|| fail(PoissonStatus::InvalidArgument, &format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), PoissonStatus> {
    if p.is_null() {
        return Err(fail(
            PoissonStatus::InvalidArgument,
            &format!("{what} is null"),
        ));
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior NUL")
        .into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn point_or_origin(point: *const c_char, n: usize) -> Result<Vec<Rational>, PoissonStatus> {
    if point.is_null() {
        return Ok(vec![int(0); n]);
    }
    let s = unsafe { str_arg(point, "point")? };
    let x = parse_point(s).map_err(|e| from_error(&e))?;
    if x.len() != n {
        return Err(fail(
            PoissonStatus::InvalidArgument,
            &format!("point has {} coordinates, expected {n}", x.len()),
        ));
    }
    Ok(x)
}

/// Message for the most recent failure on this thread; empty after a
/// successful call. The pointer stays valid until the next call.
#[no_mangle]
pub extern "C" fn poisson_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn poisson_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn poisson_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a Lie algebra file. Fails with `Precondition` if the Jacobi
/// identity does not hold.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_from_json(
    json: *const c_char,
    out: *mut *mut PoissonLieAlgebra,
) -> PoissonStatus {
    guard(|| {
        tri!(out_arg(out, "out"));
        let text = tri!(str_arg(json, "json"));
        let parsed = LieAlgebraFile::parse(text).and_then(|f| f.to_algebra());
        match parsed {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PoissonLieAlgebra { inner: g }));
                PoissonStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_free(g: *mut PoissonLieAlgebra) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_dim(
    g: *const PoissonLieAlgebra,
    out: *mut usize,
) -> PoissonStatus {
    guard(|| {
        let g = tri!(ref_arg(g, "algebra"));
        tri!(out_arg(out, "out"));
        *out = g.inner.dim();
        PoissonStatus::Ok
    })
}

/// Nondegeneracy of the Killing form.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_is_semisimple(
    g: *const PoissonLieAlgebra,
    out: *mut bool,
) -> PoissonStatus {
    guard(|| {
        let g = tri!(ref_arg(g, "algebra"));
        tri!(out_arg(out, "out"));
        *out = g.inner.is_semisimple();
        PoissonStatus::Ok
    })
}

/// `dim H^k` of the Chevalley-Eilenberg complex with trivial coefficients;
/// zero for `k` above the dimension.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_cohomology_dim(
    g: *const PoissonLieAlgebra,
    k: usize,
    out: *mut usize,
) -> PoissonStatus {
    guard(|| {
        let g = tri!(ref_arg(g, "algebra"));
        tri!(out_arg(out, "out"));
        match g.inner.ce_cohomology(k) {
            Ok(h) => {
                *out = h.dim;
                PoissonStatus::Ok
            }
            Err(e) => from_error(&Error::from(e)),
        }
    })
}

/// Canonical JSON of the algebra, in the Lie algebra file format.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_lie_algebra_to_json(
    g: *const PoissonLieAlgebra,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        let g = tri!(ref_arg(g, "algebra"));
        tri!(out_arg(out, "out"));
        let file = LieAlgebraFile::from_algebra(&g.inner);
        *out = into_c_string(serde_json::to_string(&file).expect("Lie algebras serialize"));
        PoissonStatus::Ok
    })
}

/// Parses a bivector file, or a Lie algebra file for its linear structure,
/// and certifies `[pi, pi] = 0`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_from_json(
    json: *const c_char,
    out: *mut *mut PoissonStructure,
) -> PoissonStatus {
    guard(|| {
        tri!(out_arg(out, "out"));
        let text = tri!(str_arg(json, "json"));
        let parsed = parse_structure(text).and_then(|s| {
            Ok(match s {
                StructureInput::Lie(g) => Structure::from_lie_algebra(&g),
                StructureInput::Bivector(pi) => Structure::certify(pi)?,
            })
        });
        match parsed {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PoissonStructure { inner: p }));
                PoissonStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// The linear Poisson structure on the dual of `g`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_from_lie_algebra(
    g: *const PoissonLieAlgebra,
    out: *mut *mut PoissonStructure,
) -> PoissonStatus {
    guard(|| {
        let g = tri!(ref_arg(g, "algebra"));
        tri!(out_arg(out, "out"));
        let p = Structure::from_lie_algebra(&g.inner);
        *out = Box::into_raw(Box::new(PoissonStructure { inner: p }));
        PoissonStatus::Ok
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_free(p: *mut PoissonStructure) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_dim(
    p: *const PoissonStructure,
    out: *mut usize,
) -> PoissonStatus {
    guard(|| {
        let p = tri!(ref_arg(p, "structure"));
        tri!(out_arg(out, "out"));
        *out = p.inner.ambient_dim();
        PoissonStatus::Ok
    })
}

/// Canonical JSON of the bivector, in the bivector file format.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_to_json(
    p: *const PoissonStructure,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        let p = tri!(ref_arg(p, "structure"));
        tri!(out_arg(out, "out"));
        let file = BivectorFile::from_bivector(p.inner.bivector());
        *out = into_c_string(serde_json::to_string(&file).expect("bivectors serialize"));
        PoissonStatus::Ok
    })
}

/// Isotropy algebra at `point`, a string such as `"0,1/2,-1"`; null means
/// the origin.
///
/// # Safety
/// `p` must be a live handle, `point` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_isotropy(
    p: *const PoissonStructure,
    point: *const c_char,
    out: *mut *mut PoissonLieAlgebra,
) -> PoissonStatus {
    guard(|| {
        let p = tri!(ref_arg(p, "structure"));
        tri!(out_arg(out, "out"));
        let x0 = tri!(point_or_origin(point, p.inner.ambient_dim()));
        match p.inner.isotropy_at(&x0) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PoissonLieAlgebra { inner: g }));
                PoissonStatus::Ok
            }
            Err(e) => from_error(&Error::from(e)),
        }
    })
}

/// Stability verdict at `point` (null means the origin) as a JSON object
/// with keys `verdict`, `h2_dim`, `semisimple`, `isotropy` and `witness`.
///
/// # Safety
/// `p` must be a live handle, `point` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn poisson_structure_classify_json(
    p: *const PoissonStructure,
    point: *const c_char,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        let p = tri!(ref_arg(p, "structure"));
        tri!(out_arg(out, "out"));
        *out = ptr::null_mut();
        let x0 = tri!(point_or_origin(point, p.inner.ambient_dim()));
        match classify_fixed_point(&p.inner, &x0) {
            Ok(v) => {
                let json = serde_json::to_string(&verdict_json(&v)).expect("verdicts serialize");
                *out = into_c_string(json);
                PoissonStatus::Ok
            }
            Err(e) => from_error(&Error::from(e)),
        }
    })
}
