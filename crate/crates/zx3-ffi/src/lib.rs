//! C ABI for the zx3 engine.
//!
//! Diagrams are opaque handles created by the parse and random constructors
//! and released with [`zx3_diagram_free`]. Every fallible call returns a
//! [`Zx3Status`]; on error a thread-local message is retrievable with
//! [`zx3_last_error`]. Strings returned by the library are NUL-terminated,
//! UTF-8, owned by the caller and must be released with [`zx3_string_free`].
//! All calls are panic-safe: a Rust panic is caught and surfaced as
//! `ZX3_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use zx3::diagram::Diagram;
use zx3::pipeline::{self, EqVerdict};
use zx3::semantics;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Zx3Status {
    Ok = 0,
    /// A pointer argument was null.
    NullArgument = 1,
    /// The input could not be parsed as a diagram.
    Parse = 2,
    /// The diagram violates a structural invariant.
    Invalid = 3,
    /// The two diagrams have different arities.
    ArityMismatch = 4,
    /// An intermediate tensor exceeded the contraction cap.
    SizeCap = 5,
    /// Any other engine failure; see zx3_last_error.
    Internal = 6,
}

/// Verdict of the equality decision.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Zx3Verdict {
    Equal = 0,
    Unequal = 1,
    /// Both diagrams denote the zero map of equal arity.
    BothZero = 2,
}

/// An open diagram of the qutrit calculus (opaque).
pub struct Zx3Diagram {
    inner: Diagram,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn guard<F: FnOnce() -> Zx3Status>(f: F) -> Zx3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in zx3".to_string());
            set_error(&msg);
            Zx3Status::Internal
        }
    }
}

fn export_string(s: String, out: *mut *mut c_char) -> Zx3Status {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL");
            return Zx3Status::Internal;
        }
    };
    unsafe { *out = c.into_raw() };
    Zx3Status::Ok
}

/// Latest error message on this thread; owned by the library, valid until
/// the next failing call.
#[no_mangle]
pub extern "C" fn zx3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a zx3 function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn zx3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a diagram from its text or JSON form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zx3_diagram_parse(
    text: *const c_char,
    out: *mut *mut Zx3Diagram,
) -> Zx3Status {
    if text.is_null() || out.is_null() {
        return Zx3Status::NullArgument;
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t.to_string(),
        Err(_) => {
            set_error("input is not valid UTF-8");
            return Zx3Status::Parse;
        }
    };
    guard(|| {
        let parsed = if text.trim_start().starts_with('{') {
            serde_json::from_str(&text)
                .map_err(|e| e.to_string())
                .and_then(|v: serde_json::Value| {
                    Diagram::from_json(&v).map_err(|e| e.to_string())
                })
        } else {
            Diagram::parse(&text).map_err(|e| e.to_string())
        };
        let d = match parsed {
            Ok(d) => d,
            Err(e) => {
                set_error(&e);
                return Zx3Status::Parse;
            }
        };
        if let Err(errs) = d.validate() {
            set_error(&format!("{errs:?}"));
            return Zx3Status::Invalid;
        }
        unsafe { *out = Box::into_raw(Box::new(Zx3Diagram { inner: d })) };
        Zx3Status::Ok
    })
}

/// Generate the seeded random stabilizer diagram.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zx3_diagram_random(
    wires: usize,
    gates: usize,
    seed: u64,
    out: *mut *mut Zx3Diagram,
) -> Zx3Status {
    if out.is_null() {
        return Zx3Status::NullArgument;
    }
    if wires == 0 {
        set_error("need at least one wire");
        return Zx3Status::Invalid;
    }
    guard(|| {
        let d = pipeline::random_stabilizer_diagram(wires, gates, seed);
        unsafe { *out = Box::into_raw(Box::new(Zx3Diagram { inner: d })) };
        Zx3Status::Ok
    })
}

/// Release a diagram handle.
///
/// # Safety
/// `d` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zx3_diagram_free(d: *mut Zx3Diagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of inputs and outputs of a diagram.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zx3_diagram_arity(
    d: *const Zx3Diagram,
    inputs: *mut usize,
    outputs: *mut usize,
) -> Zx3Status {
    if d.is_null() || inputs.is_null() || outputs.is_null() {
        return Zx3Status::NullArgument;
    }
    let (k, l) = (*d).inner.arity();
    *inputs = k;
    *outputs = l;
    Zx3Status::Ok
}

/// Canonical text form of a diagram.
///
/// # Safety
/// All pointers must be valid; free the result with zx3_string_free.
#[no_mangle]
pub unsafe extern "C" fn zx3_diagram_serialize(
    d: *const Zx3Diagram,
    out: *mut *mut c_char,
) -> Zx3Status {
    if d.is_null() || out.is_null() {
        return Zx3Status::NullArgument;
    }
    guard(|| export_string((*d).inner.serialize(), out))
}

/// Interpret a diagram as an exact matrix; the result is a JSON object with
/// fields rows, cols and entries (pairs [u, v] meaning u + vω).
///
/// # Safety
/// All pointers must be valid; free the result with zx3_string_free.
#[no_mangle]
pub unsafe extern "C" fn zx3_interpret_json(
    d: *const Zx3Diagram,
    out: *mut *mut c_char,
) -> Zx3Status {
    if d.is_null() || out.is_null() {
        return Zx3Status::NullArgument;
    }
    guard(|| {
        let m = match semantics::interpret(&(*d).inner) {
            Ok(m) => m,
            Err(semantics::SemanticsError::SizeCap { needed, cap }) => {
                set_error(&format!("needs {needed} legs, cap {cap}"));
                return Zx3Status::SizeCap;
            }
            Err(e) => {
                set_error(&e.to_string());
                return Zx3Status::Invalid;
            }
        };
        let entries: Vec<[i64; 2]> = m.entries().iter().map(|e| [e.u, e.v]).collect();
        let json = serde_json::json!({
            "rows": m.rows, "cols": m.cols, "entries": entries
        });
        export_string(json.to_string(), out)
    })
}

/// Normalize a diagram to reduced GS-LC form, returned as JSON. With
/// `check` nonzero the result is cross-validated against the interpreter.
///
/// # Safety
/// All pointers must be valid; free the result with zx3_string_free.
#[no_mangle]
pub unsafe extern "C" fn zx3_normalize_json(
    d: *const Zx3Diagram,
    check: i32,
    out: *mut *mut c_char,
) -> Zx3Status {
    if d.is_null() || out.is_null() {
        return Zx3Status::NullArgument;
    }
    guard(|| {
        let nf = if check != 0 {
            pipeline::normalize_checked(&(*d).inner)
        } else {
            pipeline::normalize(&(*d).inner)
        };
        match nf {
            Ok(nf) => export_string(nf.to_json().to_string(), out),
            Err(e) => {
                set_error(&e.to_string());
                Zx3Status::Internal
            }
        }
    })
}

/// Decide equality of two diagrams up to a nonzero scalar.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zx3_eq(
    d1: *const Zx3Diagram,
    d2: *const Zx3Diagram,
    check: i32,
    verdict: *mut Zx3Verdict,
) -> Zx3Status {
    if d1.is_null() || d2.is_null() || verdict.is_null() {
        return Zx3Status::NullArgument;
    }
    guard(|| {
        let r = if check != 0 {
            pipeline::decide_equal_checked(&(*d1).inner, &(*d2).inner)
        } else {
            pipeline::decide_equal(&(*d1).inner, &(*d2).inner)
        };
        match r {
            Ok(EqVerdict::Equal) => {
                *verdict = Zx3Verdict::Equal;
                Zx3Status::Ok
            }
            Ok(EqVerdict::Unequal) => {
                *verdict = Zx3Verdict::Unequal;
                Zx3Status::Ok
            }
            Ok(EqVerdict::BothZero) => {
                *verdict = Zx3Verdict::BothZero;
                Zx3Status::Ok
            }
            Err(pipeline::PipelineError::ArityMismatch(a, b)) => {
                set_error(&format!("arity mismatch: {a:?} vs {b:?}"));
                Zx3Status::ArityMismatch
            }
            Err(e) => {
                set_error(&e.to_string());
                Zx3Status::Internal
            }
        }
    })
}

/// Run the randomized self-test; returns Ok when every verdict agrees with
/// the exact interpreter.
#[no_mangle]
pub extern "C" fn zx3_selftest(trials: usize, seed: u64) -> Zx3Status {
    guard(|| {
        let report = pipeline::selftest(trials, seed);
        if report.passed() {
            Zx3Status::Ok
        } else {
            set_error(&format!(
                "disagreements at seeds {:?}",
                report.disagreements
            ));
            Zx3Status::Internal
        }
    })
}
