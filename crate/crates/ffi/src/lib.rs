//! C ABI for the ratkit library.
//!
//! Expressions and automata are exposed as opaque handles created and
//! destroyed by this library.  Every fallible call returns a
//! [`ratkit_status`]; when a call fails, a human-readable message is kept in
//! thread-local storage and can be fetched with [`ratkit_last_error`].
//! Strings returned by the library are NUL-terminated, UTF-8, and must be
//! released with [`ratkit_string_free`].
//!
//! The header `include/ratkit.h` is generated from this file by cbindgen at
//! build time.

// C-style names cross the FFI boundary verbatim; the pointer contract is
// stated once in the module docs rather than per function.
#![allow(non_camel_case_types)]
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ratkit::automaton::{Automaton, Order};
use ratkit::expr::Expr;
use ratkit::semiring::SemiringTag;
use ratkit::{delta, equiv, gamma};

/// Status of a ratkit call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ratkit_status {
    RATKIT_OK = 0,
    /// A required pointer argument was NULL.
    RATKIT_NULL_ARGUMENT = 1,
    /// A string argument was not valid UTF-8.
    RATKIT_BAD_UTF8 = 2,
    /// The input failed to parse or an operand was invalid; see
    /// `ratkit_last_error`.
    RATKIT_ERROR = 3,
    /// The library panicked; see `ratkit_last_error`.
    RATKIT_PANIC = 4,
}

/// Semiring selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ratkit_semiring {
    RATKIT_SEMIRING_B = 0,
    RATKIT_SEMIRING_N = 1,
    RATKIT_SEMIRING_Z = 2,
    RATKIT_SEMIRING_Q = 3,
    RATKIT_SEMIRING_MINPLUS = 4,
}

impl From<ratkit_semiring> for SemiringTag {
    fn from(s: ratkit_semiring) -> SemiringTag {
        match s {
            ratkit_semiring::RATKIT_SEMIRING_B => SemiringTag::B,
            ratkit_semiring::RATKIT_SEMIRING_N => SemiringTag::N,
            ratkit_semiring::RATKIT_SEMIRING_Z => SemiringTag::Z,
            ratkit_semiring::RATKIT_SEMIRING_Q => SemiringTag::Q,
            ratkit_semiring::RATKIT_SEMIRING_MINPLUS => SemiringTag::MinPlus,
        }
    }
}

/// Expression→automaton construction selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ratkit_delta_method {
    RATKIT_DELTA_STANDARD = 0,
    RATKIT_DELTA_DERIVED_TERM = 1,
    RATKIT_DELTA_THOMPSON = 2,
    RATKIT_DELTA_EGGAN = 3,
}

/// Automaton→expression algorithm selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ratkit_gamma_method {
    RATKIT_GAMMA_STATE_ELIMINATION = 0,
    RATKIT_GAMMA_SYSTEM_SOLUTION = 1,
    RATKIT_GAMMA_MCNAUGHTON_YAMADA = 2,
    RATKIT_GAMMA_RECURSIVE = 3,
}

/// Equivalence verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ratkit_verdict {
    RATKIT_EQUIVALENT = 0,
    RATKIT_NOT_EQUIVALENT = 1,
    /// Equal on every sampled word, but the method was not exact.
    RATKIT_SAMPLED_EQUIVALENT = 3,
}

/// Opaque rational expression handle.
pub struct ratkit_expr {
    inner: Expr,
}

/// Opaque automaton handle.
pub struct ratkit_automaton {
    inner: Automaton,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(CString::new(msg).unwrap_or_default());
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// The message of the last failing call on this thread, or NULL.  The
/// pointer stays valid until the next failing ratkit call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn ratkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.as_ptr(),
        None => ptr::null(),
    })
}

fn guarded<F: FnOnce() -> ratkit_status>(f: F) -> ratkit_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(msg);
            ratkit_status::RATKIT_PANIC
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ratkit_status> {
    if ptr.is_null() {
        return Err(ratkit_status::RATKIT_NULL_ARGUMENT);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| ratkit_status::RATKIT_BAD_UTF8)
}

fn give_string(s: String, out: *mut *mut c_char) -> ratkit_status {
    if out.is_null() {
        return ratkit_status::RATKIT_NULL_ARGUMENT;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            clear_error();
            ratkit_status::RATKIT_OK
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            ratkit_status::RATKIT_ERROR
        }
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                set_error(err.to_string());
                return ratkit_status::RATKIT_ERROR;
            }
        }
    };
}

macro_rules! nonnull {
    ($p:ident) => {
        match unsafe { $p.as_ref() } {
            Some(r) => r,
            None => return ratkit_status::RATKIT_NULL_ARGUMENT,
        }
    };
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ratkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

/// Parse `text` over the given semiring into a new expression handle.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_parse(
    text: *const c_char,
    semiring: ratkit_semiring,
    out: *mut *mut ratkit_expr,
) -> ratkit_status {
    guarded(|| {
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let e = try_ffi!(Expr::parse(text, semiring.into()));
        *out = Box::into_raw(Box::new(ratkit_expr { inner: e }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Release an expression handle.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_free(e: *mut ratkit_expr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Print an expression in the ratkit grammar.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_to_string(
    e: *const ratkit_expr,
    out: *mut *mut c_char,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        give_string(e.inner.to_string(), out)
    })
}

/// literal length ℓ(E), syntactic depth d(E), star height h(E).
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_metrics(
    e: *const ratkit_expr,
    literal_length: *mut usize,
    depth: *mut usize,
    star_height: *mut usize,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        if literal_length.is_null() || depth.is_null() || star_height.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let (l, d, h) = e.inner.metrics();
        *literal_length = l;
        *depth = d;
        *star_height = h;
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// The constant term c(E) as a weight string; fails on invalid expressions.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_constant_term(
    e: *const ratkit_expr,
    out: *mut *mut c_char,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        let c = try_ffi!(e.inner.constant_term());
        give_string(c.to_string(), out)
    })
}

/// Star-normal form of a Boolean expression.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_star_normal_form(
    e: *const ratkit_expr,
    out: *mut *mut ratkit_expr,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let n = try_ffi!(delta::star_normal_form(&e.inner));
        *out = Box::into_raw(Box::new(ratkit_expr { inner: n }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Build an automaton from an expression with the chosen construction.
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_to_automaton(
    e: *const ratkit_expr,
    method: ratkit_delta_method,
    out: *mut *mut ratkit_automaton,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let a = match method {
            ratkit_delta_method::RATKIT_DELTA_STANDARD => {
                try_ffi!(delta::standard_automaton(&e.inner)).into_automaton()
            }
            ratkit_delta_method::RATKIT_DELTA_DERIVED_TERM => {
                try_ffi!(delta::derived_term_automaton(&e.inner)).0
            }
            ratkit_delta_method::RATKIT_DELTA_THOMPSON => {
                try_ffi!(delta::thompson(&e.inner))
            }
            ratkit_delta_method::RATKIT_DELTA_EGGAN => {
                try_ffi!(delta::eggan_automaton(&e.inner))
            }
        };
        *out = Box::into_raw(Box::new(ratkit_automaton { inner: a }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Decide equivalence of two expressions (undecided MinPlus verdicts come
/// back as RATKIT_SAMPLED_EQUIVALENT).
#[no_mangle]
pub unsafe extern "C" fn ratkit_expr_equivalent(
    e: *const ratkit_expr,
    f: *const ratkit_expr,
    out: *mut ratkit_verdict,
) -> ratkit_status {
    guarded(|| {
        let e = nonnull!(e);
        let f = nonnull!(f);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let v = try_ffi!(equiv::equivalent_exprs(&e.inner, &f.inner));
        *out = verdict_of(&v);
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

fn verdict_of(v: &equiv::Verdict) -> ratkit_verdict {
    if !v.equivalent {
        ratkit_verdict::RATKIT_NOT_EQUIVALENT
    } else if v.method == equiv::Method::Sampled {
        ratkit_verdict::RATKIT_SAMPLED_EQUIVALENT
    } else {
        ratkit_verdict::RATKIT_EQUIVALENT
    }
}

// ---------------------------------------------------------------------------
// automata
// ---------------------------------------------------------------------------

/// Parse the line-oriented automaton text format.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_parse(
    text: *const c_char,
    out: *mut *mut ratkit_automaton,
) -> ratkit_status {
    guarded(|| {
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let a = try_ffi!(Automaton::parse_text(text));
        *out = Box::into_raw(Box::new(ratkit_automaton { inner: a }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Release an automaton handle.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_free(a: *mut ratkit_automaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Serialize in the automaton text format.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_to_text(
    a: *const ratkit_automaton,
    out: *mut *mut c_char,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        give_string(a.inner.to_text(), out)
    })
}

/// GraphViz export.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_to_dot(
    a: *const ratkit_automaton,
    out: *mut *mut c_char,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        give_string(a.inner.to_dot(), out)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_state_count(
    a: *const ratkit_automaton,
    out: *mut usize,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        *out = a.inner.state_count();
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Evaluate the automaton on a word; the weight is returned as text.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_eval(
    a: *const ratkit_automaton,
    word: *const c_char,
    out: *mut *mut c_char,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        let word = match read_str(word) {
            Ok(w) => w,
            Err(status) => return status,
        };
        let w = try_ffi!(a.inner.eval(word));
        give_string(w.to_string(), out)
    })
}

/// Replace ε-transitions by their backward closure (Boolean automata).
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_backward_closure(
    a: *const ratkit_automaton,
    out: *mut *mut ratkit_automaton,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let closed = try_ffi!(a.inner.backward_closure());
        *out = Box::into_raw(Box::new(ratkit_automaton { inner: closed }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Eggan's loop complexity (bounded exhaustive recursion).
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_loop_complexity(
    a: *const ratkit_automaton,
    out: *mut usize,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        *out = try_ffi!(a.inner.loop_complexity());
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// The coarsest behaviour-preserving quotient.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_minimal_quotient(
    a: *const ratkit_automaton,
    out: *mut *mut ratkit_automaton,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let (q, _) = a.inner.minimal_quotient();
        *out = Box::into_raw(Box::new(ratkit_automaton { inner: q }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Compute an expression denoting the behaviour.  `order` may be NULL for
/// the ascending order; otherwise it must list every state once (it is the
/// elimination order for the first three methods and the leaf order of a
/// balanced division for the recursive one).
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_to_expr(
    a: *const ratkit_automaton,
    method: ratkit_gamma_method,
    order: *const usize,
    order_len: usize,
    out: *mut *mut ratkit_expr,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let n = a.inner.state_count();
        let order = if order.is_null() {
            Order::ascending(n)
        } else {
            let seq = std::slice::from_raw_parts(order, order_len).to_vec();
            try_ffi!(Order::new(seq, n))
        };
        let e = match method {
            ratkit_gamma_method::RATKIT_GAMMA_STATE_ELIMINATION => {
                try_ffi!(gamma::state_elimination(&a.inner, &order))
            }
            ratkit_gamma_method::RATKIT_GAMMA_SYSTEM_SOLUTION => {
                try_ffi!(gamma::system_solution(&a.inner, &order))
            }
            ratkit_gamma_method::RATKIT_GAMMA_MCNAUGHTON_YAMADA => {
                try_ffi!(gamma::mcnaughton_yamada(&a.inner, &order)).aggregate
            }
            ratkit_gamma_method::RATKIT_GAMMA_RECURSIVE => {
                let div = gamma::RecursiveDivision::balanced(n);
                try_ffi!(gamma::recursive_method(&a.inner, &div)).aggregate
            }
        };
        *out = Box::into_raw(Box::new(ratkit_expr { inner: e }));
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

/// Decide equivalence of two automata.
#[no_mangle]
pub unsafe extern "C" fn ratkit_automaton_equivalent(
    a: *const ratkit_automaton,
    b: *const ratkit_automaton,
    out: *mut ratkit_verdict,
) -> ratkit_status {
    guarded(|| {
        let a = nonnull!(a);
        let b = nonnull!(b);
        if out.is_null() {
            return ratkit_status::RATKIT_NULL_ARGUMENT;
        }
        let v = try_ffi!(equiv::equivalent_automata(&a.inner, &b.inner));
        *out = verdict_of(&v);
        clear_error();
        ratkit_status::RATKIT_OK
    })
}

#[cfg(test)]
mod tests;
