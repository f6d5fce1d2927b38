//! C ABI for grabin.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Strings returned through `out`
//! parameters are NUL-terminated and must be released with
//! [`grabin_string_free`]. Every function returns a [`GrabinStatus`]; on
//! failure [`grabin_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grabin::product::{build_product_with_limit, ProductError, DEFAULT_STATE_LIMIT};
use grabin::synthesis::{synthesize_with, SynthesisError, SynthesisOptions};
use grabin::{NormalizedSpec, SpecProblem, SynthesisOutcome};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrabinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    CapacityExceeded = 4,
    /// The requested artefact does not exist for this outcome, e.g. the
    /// machine of an unrealizable spec.
    NotAvailable = 5,
    Internal = 6,
    Panic = 7,
}

/// A parsed and normalised specification.
pub struct GrabinSpec(NormalizedSpec);

/// The result of synthesis: a machine or a counterstrategy.
pub struct GrabinOutcome(SynthesisOutcome);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

fn guarded(f: impl FnOnce() -> Result<(), (GrabinStatus, String)>) -> GrabinStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrabinStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GrabinStatus::Panic
        }
    }
}

type Failure = (GrabinStatus, String);

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((GrabinStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GrabinStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| (GrabinStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((GrabinStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| (GrabinStatus::Internal, "NUL in output".into()))?;
    put(out, s.into_raw())
}

fn limit(state_limit: u64) -> u128 {
    if state_limit == 0 {
        DEFAULT_STATE_LIMIT
    } else {
        state_limit.into()
    }
}

fn product_failure(e: ProductError) -> Failure {
    (GrabinStatus::CapacityExceeded, e.to_string())
}

/// Parses spec JSON. `base_dir` resolves `hoa_file` entries and may be null
/// for the current directory. On success `*out` holds a new handle.
///
/// # Safety
/// `json` and a non-null `base_dir` must be NUL-terminated strings; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_spec_parse(
    json: *const c_char,
    base_dir: *const c_char,
    out: *mut *mut GrabinSpec,
) -> GrabinStatus {
    guarded(|| {
        let json = text(json, "json")?;
        let base = if base_dir.is_null() {
            "."
        } else {
            text(base_dir, "base_dir")?
        };
        let spec = SpecProblem::from_json(json, base)
            .and_then(|p| p.normalize())
            .map_err(|e| (GrabinStatus::InvalidSpec, e.to_string()))?;
        put(out, Box::into_raw(Box::new(GrabinSpec(spec))))
    })
}

/// # Safety
/// `spec` must be null or a handle from [`grabin_spec_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn grabin_spec_free(spec: *mut GrabinSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Decides realizability and extracts a machine or counterstrategy.
/// A `state_limit` of 0 selects the default product size limit.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_synthesize(
    spec: *const GrabinSpec,
    state_limit: u64,
    out: *mut *mut GrabinOutcome,
) -> GrabinStatus {
    guarded(|| {
        let spec = handle(spec, "spec")?;
        let options = SynthesisOptions {
            state_limit: limit(state_limit),
        };
        let run = synthesize_with(&spec.0, options).map_err(|e| match e {
            SynthesisError::Capacity(e) => product_failure(e),
            other => (GrabinStatus::Internal, other.to_string()),
        })?;
        put(out, Box::into_raw(Box::new(GrabinOutcome(run.outcome))))
    })
}

/// # Safety
/// `outcome` must be null or a handle from [`grabin_synthesize`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn grabin_outcome_free(outcome: *mut GrabinOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// # Safety
/// `outcome` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_outcome_is_realizable(
    outcome: *const GrabinOutcome,
    out: *mut bool,
) -> GrabinStatus {
    guarded(|| put(out, handle(outcome, "outcome")?.0.is_realizable()))
}

/// The Mealy machine as JSON. Fails with `NotAvailable` when unrealizable.
///
/// # Safety
/// `outcome` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_outcome_machine_json(
    outcome: *const GrabinOutcome,
    out: *mut *mut c_char,
) -> GrabinStatus {
    guarded(|| match &handle(outcome, "outcome")?.0 {
        SynthesisOutcome::Realizable { machine, .. } => put_string(out, machine.to_json()),
        SynthesisOutcome::Unrealizable { .. } => Err((
            GrabinStatus::NotAvailable,
            "specification is unrealizable; no machine".into(),
        )),
    })
}

/// The environment counterstrategy as JSON. Fails with `NotAvailable` when
/// realizable.
///
/// # Safety
/// `outcome` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_outcome_counterstrategy_json(
    outcome: *const GrabinOutcome,
    out: *mut *mut c_char,
) -> GrabinStatus {
    guarded(|| match &handle(outcome, "outcome")?.0 {
        SynthesisOutcome::Unrealizable {
            counterstrategy, ..
        } => put_string(out, counterstrategy.to_json()),
        SynthesisOutcome::Realizable { .. } => Err((
            GrabinStatus::NotAvailable,
            "specification is realizable; no counterstrategy".into(),
        )),
    })
}

/// The specification's parity automaton in HOA format.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grabin_product_hoa(
    spec: *const GrabinSpec,
    state_limit: u64,
    out: *mut *mut c_char,
) -> GrabinStatus {
    guarded(|| {
        let spec = handle(spec, "spec")?;
        let pa = build_product_with_limit(&spec.0, limit(state_limit)).map_err(product_failure)?;
        put_string(out, pa.to_hoa())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn grabin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn grabin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
