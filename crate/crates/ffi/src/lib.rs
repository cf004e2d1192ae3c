//! C ABI for `sepvar`.
//!
//! Every entry point returns a [`SepvarStatus`]; results come back through
//! out-pointers. Objects are opaque handles owned by the caller and released
//! with the matching `_free` function. Strings returned to the caller are
//! released with [`sepvar_string_free`]. On failure a message is stored per
//! thread and can be read with [`sepvar_last_error_message`].
//!
//! Panics never cross the boundary: they are caught and reported as
//! [`SepvarStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sepvar::cli::parse_poly;
use sepvar::driver::{separate, SeparationResult};
use sepvar::groebner::Ideal;
use sepvar::mpoly::{vars_of, MPoly};
use sepvar::principal::{minimal_separated_multiple, PrincipalResult};
use sepvar::zerodim::PairFG;
use sepvar::Error;
use serde_json::json;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SepvarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Input outside the domain of the operation.
    Precondition = 4,
    /// The computation failed or hit an iteration cap.
    Computation = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A polynomial with its variable names.
pub struct SepvarPoly {
    inner: MPoly,
}

/// Result of the minimal separated multiple computation.
pub struct SepvarMinsep {
    inner: PrincipalResult,
    names: [String; 2],
}

/// Generators of the algebra of separated polynomials in an ideal.
pub struct SepvarSeparation {
    inner: SeparationResult,
    names: [String; 2],
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(SepvarStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => SepvarStatus::Parse,
            Error::Precondition(_) | Error::ZeroInput(_) | Error::RingMismatch(_) | Error::TooManyVariables(_) => {
                SepvarStatus::Precondition
            }
            _ => SepvarStatus::Computation,
        };
        Fail(status, e.to_string())
    }
}

fn fail(status: SepvarStatus, msg: impl Into<String>) -> Fail {
    Fail(status, msg.into())
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SepvarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SepvarStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            SepvarStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(SepvarStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SepvarStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(SepvarStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(fail(SepvarStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn two_names(p: &MPoly) -> Result<[String; 2], Fail> {
    match p.vars().as_ref() {
        [a, b] => Ok([a.clone(), b.clone()]),
        v => Err(fail(
            SepvarStatus::Precondition,
            format!("expected two variables, got {}", v.len()),
        )),
    }
}

fn pair_strings(p: &PairFG, names: &[String; 2]) -> (String, String) {
    (p.f.display_in(&names[0]), p.g.display_in(&names[1]))
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library on the
/// same thread.
#[no_mangle]
pub extern "C" fn sepvar_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sepvar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sepvar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` over the comma-separated variable names `vars`
/// (`"x,y"` when null).
///
/// # Safety
/// `text` and a non-null `vars` must be NUL-terminated strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_poly_parse(
    text: *const c_char,
    vars: *const c_char,
    out: *mut *mut SepvarPoly,
) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = read_str(text, "text")?;
        let names = if vars.is_null() { "x,y" } else { read_str(vars, "vars")? };
        let names: Vec<&str> = names.split(',').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(fail(SepvarStatus::Precondition, "empty variable name"));
        }
        let p = parse_poly(text, &vars_of(&names))?;
        *out = Box::into_raw(Box::new(SepvarPoly { inner: p }));
        Ok(())
    })
}

/// Canonical text of a polynomial; free with [`sepvar_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_poly_to_string(p: *const SepvarPoly, out: *mut *mut c_char) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = deref(p, "poly")?;
        *out = to_c(sepvar::cli::print_poly(&p.inner));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a live handle from [`sepvar_poly_parse`].
#[no_mangle]
pub unsafe extern "C" fn sepvar_poly_free(p: *mut SepvarPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Minimal separated multiple of a bivariate polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_minsep(p: *const SepvarPoly, out: *mut *mut SepvarMinsep) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = deref(p, "poly")?;
        let names = two_names(&p.inner)?;
        let r = minimal_separated_multiple(&p.inner)?;
        *out = Box::into_raw(Box::new(SepvarMinsep { inner: r, names }));
        Ok(())
    })
}

/// Whether a nontrivial separated multiple exists.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_minsep_is_separable(m: *const SepvarMinsep, out: *mut bool) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = !deref(m, "minsep")?.inner.trivial;
        Ok(())
    })
}

/// The generator `(f, g)`; `(1, 1)` when not separable. Both strings must
/// be freed with [`sepvar_string_free`].
///
/// # Safety
/// `m` must be a live handle; `f` and `g` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_minsep_generator(
    m: *const SepvarMinsep,
    f: *mut *mut c_char,
    g: *mut *mut c_char,
) -> SepvarStatus {
    guard(|| {
        check_out(f, "f")?;
        check_out(g, "g")?;
        let m = deref(m, "minsep")?;
        let (a, b) = pair_strings(&m.inner.generator, &m.names);
        *f = to_c(a);
        *g = to_c(b);
        Ok(())
    })
}

/// JSON object `{separable, f, g, N, diagnostic}`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_minsep_to_json(m: *const SepvarMinsep, out: *mut *mut c_char) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = deref(m, "minsep")?;
        let (f, g) = pair_strings(&m.inner.generator, &m.names);
        let v = json!({
            "separable": !m.inner.trivial,
            "f": f,
            "g": g,
            "N": m.inner.n,
            "diagnostic": m.inner.diagnostic,
        });
        *out = to_c(v.to_string());
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle from [`sepvar_minsep`].
#[no_mangle]
pub unsafe extern "C" fn sepvar_minsep_free(m: *mut SepvarMinsep) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Generators of the algebra of separated polynomials in the ideal spanned
/// by `gens[0..n]`. All generators must share the same two variables.
///
/// # Safety
/// `gens` must point to `n` live handles (it may be null when `n == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_separate(
    gens: *const *const SepvarPoly,
    n: usize,
    out: *mut *mut SepvarSeparation,
) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        if n == 0 {
            return Err(fail(
                SepvarStatus::Precondition,
                "at least one generator is needed to fix the variables",
            ));
        }
        if gens.is_null() {
            return Err(fail(SepvarStatus::NullPointer, "gens is null"));
        }
        let polys = std::slice::from_raw_parts(gens, n)
            .iter()
            .enumerate()
            .map(|(i, &p)| deref(p, &format!("gens[{i}]")).map(|p| p.inner.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let names = two_names(&polys[0])?;
        let ideal = Ideal::new(polys[0].vars().clone(), polys)?;
        let r = separate(&ideal)?;
        *out = Box::into_raw(Box::new(SepvarSeparation { inner: r, names }));
        Ok(())
    })
}

/// Number of generator pairs.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_separation_count(s: *const SepvarSeparation, out: *mut usize) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = deref(s, "separation")?.inner.generators.len();
        Ok(())
    })
}

/// Generator pair `index`; strings are freed with [`sepvar_string_free`].
///
/// # Safety
/// `s` must be a live handle; `f` and `g` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_separation_generator(
    s: *const SepvarSeparation,
    index: usize,
    f: *mut *mut c_char,
    g: *mut *mut c_char,
) -> SepvarStatus {
    guard(|| {
        check_out(f, "f")?;
        check_out(g, "g")?;
        let s = deref(s, "separation")?;
        let Some(pair) = s.inner.generators.get(index) else {
            return Err(fail(
                SepvarStatus::OutOfRange,
                format!("index {index} out of range ({} generators)", s.inner.generators.len()),
            ));
        };
        let (a, b) = pair_strings(pair, &s.names);
        *f = to_c(a);
        *g = to_c(b);
        Ok(())
    })
}

/// JSON object `{generators, certificates, a, path}`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sepvar_separation_to_json(s: *const SepvarSeparation, out: *mut *mut c_char) -> SepvarStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = deref(s, "separation")?;
        let pair = |p: &PairFG| {
            let (f, g) = pair_strings(p, &s.names);
            json!({ "f": f, "g": g })
        };
        let v = json!({
            "generators": s.inner.generators.iter().map(pair).collect::<Vec<_>>(),
            "certificates": s.inner.certificate_polynomials.iter().map(|p| p.display_in("t")).collect::<Vec<_>>(),
            "a": s.inner.a.as_ref().map(pair),
            "path": s.inner.path,
        });
        *out = to_c(v.to_string());
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a live handle from [`sepvar_separate`].
#[no_mangle]
pub unsafe extern "C" fn sepvar_separation_free(s: *mut SepvarSeparation) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
