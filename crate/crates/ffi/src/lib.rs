//! C interface to `fata`.
//!
//! Automata are opaque `FataAutomaton` handles released with
//! [`fata_automaton_free`]. Every call returns a [`FataStatus`]; on failure
//! [`fata_last_error`] describes the problem. Strings handed out by the
//! library are released with [`fata_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fata::automata::{complement, determinize, product, Automaton, Dfa, ProductMode};
use fata::decide::{equivalent, is_empty, subset, Decision, Limits};
use fata::forest::forest;
use fata::io::{load_automaton, parse_fta, save_automaton, write_fta};
use fata::Error;

/// Opaque automaton handle.
pub struct FataAutomaton {
    inner: Automaton,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FataStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Invalid = 4,
    Io = 5,
    AlphabetMismatch = 6,
    CapExceeded = 7,
    Precondition = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FataProductMode {
    Union = 0,
    Intersection = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> FataStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownSymbol(_) | Error::Hole(_) => FataStatus::Syntax,
        Error::Invalid(_) => FataStatus::Invalid,
        Error::Io { .. } => FataStatus::Io,
        Error::AlphabetMismatch(_) => FataStatus::AlphabetMismatch,
        Error::CapExceeded { .. } => FataStatus::CapExceeded,
        Error::Internal(_) => FataStatus::Internal,
        _ => FataStatus::Precondition,
    }
}

/// Runs `body`, recording any error or panic.
fn guard(body: impl FnOnce() -> Result<(), FataStatus>) -> FataStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            FataStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside fata");
            FataStatus::Panic
        }
    }
}

fn fail(e: Error) -> FataStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, FataStatus> {
    if s.is_null() {
        set_error("null argument");
        return Err(FataStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FataStatus::InvalidUtf8
    })
}

unsafe fn handle<'a>(m: *const FataAutomaton) -> Result<&'a Automaton, FataStatus> {
    m.as_ref().map(|h| &h.inner).ok_or_else(|| {
        set_error("null automaton");
        FataStatus::NullArgument
    })
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), FataStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(FataStatus::NullArgument);
    }
    out.write(value);
    Ok(())
}

fn boxed(m: impl Into<Automaton>) -> *mut FataAutomaton {
    Box::into_raw(Box::new(FataAutomaton { inner: m.into() }))
}

fn owned_string(s: &str) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn as_dfa(m: &Automaton) -> Result<Dfa, FataStatus> {
    match m {
        Automaton::Dfa(d) => Ok(d.clone()),
        Automaton::Nfa(n) => determinize(n, Limits::default().max_subsets).map_err(fail),
    }
}

/// Stores the verdict and, when `witness` is not null, a witness string or
/// null.
unsafe fn decision(
    d: Decision,
    verdict: *mut bool,
    witness: *mut *mut c_char,
) -> Result<(), FataStatus> {
    put(verdict, d.verdict)?;
    if !witness.is_null() {
        let w = d
            .witness
            .map_or(ptr::null_mut(), |f| owned_string(&f.to_string()));
        witness.write(w);
    }
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fata_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a `.fta` file.
///
/// # Safety
/// `path` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_load(
    path: *const c_char,
    out: *mut *mut FataAutomaton,
) -> FataStatus {
    guard(|| {
        let path = text(path)?;
        let m = load_automaton(path).map_err(fail)?;
        put(out, boxed(m))
    })
}

/// Parses `.fta` text.
///
/// # Safety
/// `source` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_parse(
    source: *const c_char,
    out: *mut *mut FataAutomaton,
) -> FataStatus {
    guard(|| {
        let source = text(source)?;
        let m = parse_fta(source, None).map_err(fail)?;
        put(out, boxed(m))
    })
}

/// # Safety
/// `m` is a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_save(
    m: *const FataAutomaton,
    path: *const c_char,
) -> FataStatus {
    guard(|| {
        let m = handle(m)?;
        let path = text(path)?;
        save_automaton(path, m).map_err(fail)
    })
}

/// The `.fta` text of `m`, to be released with [`fata_string_free`].
///
/// # Safety
/// `m` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_to_string(
    m: *const FataAutomaton,
    out: *mut *mut c_char,
) -> FataStatus {
    guard(|| {
        let m = handle(m)?;
        put(out, owned_string(&write_fta(m)))
    })
}

/// # Safety
/// `m` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_free(m: *mut FataAutomaton) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fata_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_num_states(m: *const FataAutomaton) -> usize {
    m.as_ref().map_or(0, |h| h.inner.monoid().len())
}

/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fata_automaton_is_deterministic(m: *const FataAutomaton) -> bool {
    m.as_ref().is_some_and(|h| h.inner.is_deterministic())
}

/// Is the forest written in `forest_text` accepted?
///
/// # Safety
/// `m` is a live handle, `forest_text` a NUL-terminated string and
/// `accepted` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_member(
    m: *const FataAutomaton,
    forest_text: *const c_char,
    accepted: *mut bool,
) -> FataStatus {
    guard(|| {
        let m = handle(m)?;
        let f = forest(text(forest_text)?).map_err(fail)?;
        put(accepted, m.accepts(&f).map_err(fail)?)
    })
}

/// Emptiness. When the language is not empty and `witness` is not null, a
/// smallest accepted forest is stored there.
///
/// # Safety
/// `m` is a live handle, `empty` a valid pointer, `witness` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fata_is_empty(
    m: *const FataAutomaton,
    empty: *mut bool,
    witness: *mut *mut c_char,
) -> FataStatus {
    guard(|| {
        let m = handle(m)?;
        let d = is_empty(&m.to_nfa()).map_err(fail)?.decision;
        decision(d, empty, witness)
    })
}

/// Language equivalence; nondeterministic inputs are determinized first. A
/// witness separates the two languages.
///
/// # Safety
/// `m1`, `m2` are live handles, `equal` a valid pointer, `witness` null or
/// valid.
#[no_mangle]
pub unsafe extern "C" fn fata_equivalent(
    m1: *const FataAutomaton,
    m2: *const FataAutomaton,
    equal: *mut bool,
    witness: *mut *mut c_char,
) -> FataStatus {
    guard(|| {
        let (a, b) = (as_dfa(handle(m1)?)?, as_dfa(handle(m2)?)?);
        let d = equivalent(&a, &b).map_err(fail)?.decision;
        decision(d, equal, witness)
    })
}

/// `L(m1) ⊆ L(m2)`. A witness lies in `L(m1)` but not in `L(m2)`.
///
/// # Safety
/// As [`fata_equivalent`].
#[no_mangle]
pub unsafe extern "C" fn fata_subset(
    m1: *const FataAutomaton,
    m2: *const FataAutomaton,
    included: *mut bool,
    witness: *mut *mut c_char,
) -> FataStatus {
    guard(|| {
        let (a, b) = (as_dfa(handle(m1)?)?, as_dfa(handle(m2)?)?);
        let d = subset(&a, &b).map_err(fail)?;
        decision(d, included, witness)
    })
}

/// # Safety
/// `m` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_complement(
    m: *const FataAutomaton,
    out: *mut *mut FataAutomaton,
) -> FataStatus {
    guard(|| {
        let d = as_dfa(handle(m)?)?;
        put(out, boxed(complement(&d)))
    })
}

/// Subset construction, failing with `CapExceeded` beyond `max_subsets`.
///
/// # Safety
/// `m` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_determinize(
    m: *const FataAutomaton,
    max_subsets: usize,
    out: *mut *mut FataAutomaton,
) -> FataStatus {
    guard(|| {
        let n = handle(m)?.to_nfa();
        put(out, boxed(determinize(&n, max_subsets).map_err(fail)?))
    })
}

/// # Safety
/// `m1`, `m2` are live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fata_product(
    m1: *const FataAutomaton,
    m2: *const FataAutomaton,
    mode: FataProductMode,
    out: *mut *mut FataAutomaton,
) -> FataStatus {
    guard(|| {
        let (a, b) = (as_dfa(handle(m1)?)?, as_dfa(handle(m2)?)?);
        let mode = match mode {
            FataProductMode::Union => ProductMode::Union,
            FataProductMode::Intersection => ProductMode::Intersection,
        };
        put(out, boxed(product(&a, &b, mode).map_err(fail)?))
    })
}
