//! C ABI for `lorentz3`.
//!
//! Objects cross the boundary as opaque handles: `L3Derivation` and
//! `L3Chart`, each released with its `*_free` function. Every fallible call
//! returns an [`L3Status`]; on failure `l3_last_error()` describes it.
//! Strings returned through `char **` belong to the caller and are released
//! with `l3_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lorentz3::classify;
use lorentz3::geodesic::{self, Controls, GeodesicState, Termination};
use lorentz3::geometry::{curvature, Chart, PlaneWaveChart, RosenChart};
use lorentz3::lie::{self, Derivation};
use lorentz3::rational;
use lorentz3::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotADerivation = 5,
    CentralIsotropy = 6,
    UnimodularInput = 7,
    NoInvariantMetric = 8,
    DomainError = 9,
    DegeneratePlane = 10,
    StepUnderflow = 11,
    Io = 12,
    Panic = 13,
}

impl From<&Error> for L3Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotADerivation => L3Status::NotADerivation,
            Error::CentralIsotropy => L3Status::CentralIsotropy,
            Error::UnimodularInput => L3Status::UnimodularInput,
            Error::NoInvariantMetric(_) => L3Status::NoInvariantMetric,
            Error::DomainError { .. } => L3Status::DomainError,
            Error::DegeneratePlane(_) => L3Status::DegeneratePlane,
            Error::StepUnderflow { .. } => L3Status::StepUnderflow,
            Error::Parse(_) => L3Status::Parse,
            Error::InvalidArgument(_) => L3Status::InvalidArgument,
            Error::Io(_) => L3Status::Io,
        }
    }
}

/// How a geodesic integration ended.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L3Termination {
    CompletedSpan = 0,
    HitDomainBoundary = 1,
    StepUnderflow = 2,
}

/// A derivation of the Heisenberg algebra.
pub struct L3Derivation {
    inner: Derivation,
}

/// A coordinate chart of a plane wave.
pub struct L3Chart {
    inner: Box<dyn Chart>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: L3Status, msg: impl Into<String>) -> L3Status {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), L3Status>) -> L3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            L3Status::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(L3Status::Panic, "internal panic"),
    }
}

fn engine(e: Error) -> L3Status {
    fail(L3Status::from(&e), e.to_string())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, L3Status> {
    if s.is_null() {
        return Err(fail(L3Status::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(L3Status::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, L3Status> {
    p.as_ref()
        .ok_or_else(|| fail(L3Status::NullPointer, format!("null {what}")))
}

unsafe fn output<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, L3Status> {
    p.as_mut()
        .ok_or_else(|| fail(L3Status::NullPointer, format!("null {what} output")))
}

unsafe fn triple(p: *const f64, what: &str) -> Result<[f64; 3], L3Status> {
    if p.is_null() {
        return Err(fail(L3Status::NullPointer, format!("null {what}")));
    }
    Ok([*p, *p.add(1), *p.add(2)])
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn l3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn l3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn l3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a row-major 3x3 JSON array in the basis (Z, X, Y).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_derivation_from_json(json: *const c_char, out: *mut *mut L3Derivation) -> L3Status {
    guard(|| {
        let out = output(out, "derivation")?;
        let raw: serde_json::Value =
            serde_json::from_str(text(json)?).map_err(|e| fail(L3Status::Parse, e.to_string()))?;
        let inner = lie::derivation_from_json(&raw).map_err(engine)?;
        *out = Box::into_raw(Box::new(L3Derivation { inner }));
        Ok(())
    })
}

/// The normal form `[[1,0,0],[0,0,1],[0,b,1]]` for a rational `b` such as `"-1/4"`.
///
/// # Safety
/// `b` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_derivation_canonical(b: *const c_char, out: *mut *mut L3Derivation) -> L3Status {
    guard(|| {
        let out = output(out, "derivation")?;
        let b = rational::parse_exact(text(b)?).map_err(engine)?;
        *out = Box::into_raw(Box::new(L3Derivation {
            inner: Derivation::canonical(b),
        }));
        Ok(())
    })
}

/// `diag(1, 1 - alpha, alpha)` for a rational `alpha`.
///
/// # Safety
/// `alpha` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_derivation_rosen(alpha: *const c_char, out: *mut *mut L3Derivation) -> L3Status {
    guard(|| {
        let out = output(out, "derivation")?;
        let a = rational::parse_exact(text(alpha)?).map_err(engine)?;
        *out = Box::into_raw(Box::new(L3Derivation {
            inner: Derivation::rosen(a),
        }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from a derivation constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn l3_derivation_free(d: *mut L3Derivation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Invariant `b` as a rational string.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_invariant_b(d: *const L3Derivation, out: *mut *mut c_char) -> L3Status {
    guard(|| {
        let d = reference(d, "derivation")?;
        let out = output(out, "string")?;
        let b = classify::invariant_b(&d.inner).map_err(engine)?;
        *out = owned_string(rational::to_string(&b));
        Ok(())
    })
}

/// Class tag such as `"NonUnimodularHyperbolic"`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_classify(d: *const L3Derivation, out: *mut *mut c_char) -> L3Status {
    guard(|| {
        let d = reference(d, "derivation")?;
        let out = output(out, "string")?;
        let class = classify::classify(&d.inner).map_err(engine)?;
        *out = owned_string(class.tag().to_string());
        Ok(())
    })
}

/// Full space report as JSON.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_space_report_json(d: *const L3Derivation, out: *mut *mut c_char) -> L3Status {
    guard(|| {
        let d = reference(d, "derivation")?;
        let out = output(out, "string")?;
        let report = classify::space_report(&d.inner).map_err(engine)?;
        let json = serde_json::to_string(&report).map_err(|e| fail(L3Status::Io, e.to_string()))?;
        *out = owned_string(json);
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_groups_isomorphic(
    a: *const L3Derivation,
    b: *const L3Derivation,
    out: *mut bool,
) -> L3Status {
    guard(|| {
        let (a, b) = (reference(a, "derivation")?, reference(b, "derivation")?);
        let out = output(out, "bool")?;
        *out = classify::groups_isomorphic(&a.inner, &b.inner).map_err(engine)?;
        Ok(())
    })
}

fn new_chart(chart: impl Chart + 'static, out: *mut *mut L3Chart) -> L3Status {
    guard(|| {
        // SAFETY: checked for null; the caller guarantees writability.
        let out = unsafe { output(out, "chart")? };
        *out = Box::into_raw(Box::new(L3Chart { inner: Box::new(chart) }));
        Ok(())
    })
}

/// Brinkmann chart `2dudv + (b/u²)x²du² + dx²` on `u > 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_power_law(b: f64, out: *mut *mut L3Chart) -> L3Status {
    new_chart(PlaneWaveChart::power_law(b), out)
}

/// Brinkmann chart `2dudv + h x²du² + dx²`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_constant(h: f64, out: *mut *mut L3Chart) -> L3Status {
    new_chart(PlaneWaveChart::constant(h), out)
}

/// Rosen chart `2dudv + u^(2 alpha) dx²` on `u > 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_rosen_power(alpha: f64, out: *mut *mut L3Chart) -> L3Status {
    new_chart(RosenChart::power(alpha), out)
}

/// Brinkmann chart of the space classified from `d`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_for(d: *const L3Derivation, out: *mut *mut L3Chart) -> L3Status {
    let chart = match reference(d, "derivation").and_then(|d| classify::classify(&d.inner).map_err(engine)) {
        Ok(class) => class.chart(),
        Err(status) => return status,
    };
    new_chart(chart, out)
}

/// # Safety
/// `c` must come from a chart constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_free(c: *mut L3Chart) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn write_all(out: *mut f64, values: impl IntoIterator<Item = f64>) -> Result<(), L3Status> {
    if out.is_null() {
        return Err(fail(L3Status::NullPointer, "null output array"));
    }
    for (i, v) in values.into_iter().enumerate() {
        *out.add(i) = v;
    }
    Ok(())
}

/// Metric at `point[3]` (coordinates u, v, x) into `out[9]`, row-major.
///
/// # Safety
/// `c` must be a live handle; `point` must hold 3 doubles and `out` 9.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_metric(c: *const L3Chart, point: *const f64, out: *mut f64) -> L3Status {
    guard(|| {
        let c = reference(c, "chart")?;
        let g = c.inner.metric_at(&triple(point, "point")?).map_err(engine)?;
        write_all(out, g.into_iter().flatten())
    })
}

/// `Γ^k_ij` into `out[27]` at index `9k + 3i + j`.
///
/// # Safety
/// `c` must be a live handle; `point` must hold 3 doubles and `out` 27.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_christoffels(c: *const L3Chart, point: *const f64, out: *mut f64) -> L3Status {
    guard(|| {
        let c = reference(c, "chart")?;
        let gamma = c.inner.christoffels(&triple(point, "point")?).map_err(engine)?;
        write_all(out, gamma.into_iter().flatten().flatten())
    })
}

/// `R_ijkl = g(R(∂i,∂j)∂k, ∂l)` into `out[81]` at index `27i + 9j + 3k + l`.
///
/// # Safety
/// `c` must be a live handle; `point` must hold 3 doubles and `out` 81.
#[no_mangle]
pub unsafe extern "C" fn l3_chart_riemann(c: *const L3Chart, point: *const f64, out: *mut f64) -> L3Status {
    guard(|| {
        let c = reference(c, "chart")?;
        let r = c.inner.riemann(&triple(point, "point")?).map_err(engine)?;
        write_all(out, r.into_iter().flatten().flatten().flatten())
    })
}

/// Sectional curvature of the plane spanned by `e1[3]`, `e2[3]`.
///
/// # Safety
/// `c` must be a live handle; array arguments must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn l3_sectional_curvature(
    c: *const L3Chart,
    point: *const f64,
    e1: *const f64,
    e2: *const f64,
    out: *mut f64,
) -> L3Status {
    guard(|| {
        let c = reference(c, "chart")?;
        let out = output(out, "double")?;
        *out = curvature::sectional_curvature(
            c.inner.as_ref(),
            &triple(point, "point")?,
            &triple(e1, "e1")?,
            &triple(e2, "e2")?,
        )
        .map_err(engine)?;
        Ok(())
    })
}

/// Integrates the geodesic with initial `state[6] = (u, v, x, u', v', x')`
/// over the affine `span` with default tolerances. Writes the final state,
/// the affine parameter reached and how the run ended.
///
/// # Safety
/// `c` must be a live handle; `state` and `final_state` must hold 6
/// doubles; the scalar outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn l3_integrate_geodesic(
    c: *const L3Chart,
    state: *const f64,
    span: f64,
    final_state: *mut f64,
    affine_reached: *mut f64,
    termination: *mut L3Termination,
) -> L3Status {
    guard(|| {
        let c = reference(c, "chart")?;
        let reached = output(affine_reached, "affine parameter")?;
        let term = output(termination, "termination")?;
        let init = GeodesicState::new(triple(state, "state")?, triple(state.add(3), "state")?);
        let r = geodesic::integrate_geodesic(c.inner.as_ref(), &init, span, &Controls::default()).map_err(engine)?;
        let last = r.last().state;
        write_all(final_state, last.position.into_iter().chain(last.velocity))?;
        *reached = r.affine_span_reached;
        *term = match r.terminated {
            Termination::CompletedSpan => L3Termination::CompletedSpan,
            Termination::HitDomainBoundary => L3Termination::HitDomainBoundary,
            Termination::StepUnderflow => L3Termination::StepUnderflow,
        };
        Ok(())
    })
}
