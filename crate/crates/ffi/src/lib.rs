//! C interface to the abduction engine.
//!
//! A session owns one ontology and the results of the last call. Strings
//! returned by the `aa_session_*` accessors are owned by the session and stay
//! valid until the next call on that session or until it is freed.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alc_abduct::abduction::{abduce, AbductionError, AbductionRequest, Mode};
use alc_abduct::forgetting::{Budget, ForgetError};
use alc_abduct::model::Ontology;
use alc_abduct::parser::{
    parse_axiom, parse_observation, parse_ontology, parse_symbol_list, render_hypothesis, SourceDocument,
};
use alc_abduct::tableau::{Reasoner, TableauError};

/// Result codes. Every fallible function returns one of these.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NoOntology = 4,
    InconsistentOntology = 5,
    ObservationInconsistent = 6,
    ObservationEntailed = 7,
    NoHypothesis = 8,
    InvalidSignature = 9,
    Timeout = 10,
    Unsupported = 11,
    InvalidMode = 12,
    Internal = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaMode {
    Approx = 0,
    Full = 1,
    FullNoApprox = 2,
}

/// Opaque session handle.
pub struct AaSession {
    ontology: Option<Ontology>,
    hypothesis: Option<CString>,
    report: Option<CString>,
    error: Option<CString>,
}

impl AaSession {
    fn fail(&mut self, status: AaStatus, message: impl Into<String>) -> AaStatus {
        self.error = CString::new(message.into().replace('\0', " ")).ok();
        status
    }

    fn clear(&mut self) {
        self.hypothesis = None;
        self.report = None;
        self.error = None;
    }
}

fn abduction_status(e: &AbductionError) -> AaStatus {
    match e {
        AbductionError::InconsistentOntology => AaStatus::InconsistentOntology,
        AbductionError::ObservationInconsistent => AaStatus::ObservationInconsistent,
        AbductionError::ObservationAlreadyEntailed => AaStatus::ObservationEntailed,
        AbductionError::NoHypothesis => AaStatus::NoHypothesis,
        AbductionError::EmptyObservation => AaStatus::Parse,
        AbductionError::InvalidSignature(_) | AbductionError::Forget(ForgetError::InvalidSignature(_)) => {
            AaStatus::InvalidSignature
        }
        AbductionError::Forget(ForgetError::BudgetExceeded { .. } | ForgetError::OutputTooLarge { .. })
        | AbductionError::Tableau(TableauError::Timeout) => AaStatus::Timeout,
        AbductionError::Tableau(TableauError::FixpointUnsupported) | AbductionError::Forget(_) => AaStatus::Unsupported,
    }
}

/// Reads a required C string argument.
unsafe fn arg<'a>(p: *const c_char) -> Result<&'a str, AaStatus> {
    if p.is_null() {
        return Err(AaStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| AaStatus::InvalidUtf8)
}

/// Runs `f` on the session, turning panics into `Internal`.
unsafe fn with_session(s: *mut AaSession, f: impl FnOnce(&mut AaSession) -> AaStatus) -> AaStatus {
    let Some(session) = s.as_mut() else { return AaStatus::NullArgument };
    match catch_unwind(AssertUnwindSafe(|| f(&mut *session))) {
        Ok(status) => status,
        Err(_) => {
            session.error = CString::new("internal error").ok();
            AaStatus::Internal
        }
    }
}

fn string_ptr(s: &Option<CString>) -> *const c_char {
    s.as_ref().map_or(ptr::null(), |c| c.as_ptr())
}

/// Creates an empty session. Free it with `aa_session_free`.
#[no_mangle]
pub extern "C" fn aa_session_new() -> *mut AaSession {
    Box::into_raw(Box::new(AaSession { ontology: None, hypothesis: None, report: None, error: None }))
}

/// Frees a session. Null is ignored.
///
/// # Safety
/// `s` must come from `aa_session_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aa_session_free(s: *mut AaSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parses `text` as the session ontology, replacing any previous one.
///
/// # Safety
/// `s` must be a live session and `text` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn aa_session_load_ontology(s: *mut AaSession, text: *const c_char) -> AaStatus {
    with_session(s, |session| {
        session.clear();
        let text = match arg(text) {
            Ok(t) => t,
            Err(status) => return session.fail(status, "ontology text is null or not UTF-8"),
        };
        match parse_ontology(&SourceDocument::inline(text)) {
            Ok(o) => {
                session.ontology = Some(o);
                AaStatus::Ok
            }
            Err(e) => session.fail(AaStatus::Parse, e.to_string()),
        }
    })
}

/// Abduces a hypothesis for `observation` (one assertion per line),
/// forgetting the comma-separated concept names in `forget`. `mode` is an
/// `AaMode` value; a timeout of 0 uses the default budget. On success the
/// hypothesis and a JSON report are available from the session.
///
/// # Safety
/// `s` must be a live session; the strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn aa_session_abduce(
    s: *mut AaSession,
    observation: *const c_char,
    forget: *const c_char,
    mode: u32,
    timeout_ms: u64,
) -> AaStatus {
    with_session(s, |session| {
        session.clear();
        let (obs, forget) = match (arg(observation), arg(forget)) {
            (Ok(o), Ok(f)) => (o, f),
            (Err(status), _) | (_, Err(status)) => {
                return session.fail(status, "observation or signature is null or not UTF-8")
            }
        };
        let Some(onto) = session.ontology.as_ref() else {
            return session.fail(AaStatus::NoOntology, "no ontology loaded");
        };
        let mut onto = onto.clone();
        let psi = match parse_observation(&SourceDocument::inline(obs), &mut onto.symbols) {
            Ok(p) => p,
            Err(e) => return session.fail(AaStatus::Parse, e.to_string()),
        };
        let f = match parse_symbol_list(forget, &mut onto.symbols) {
            Ok(f) => f,
            Err(e) => return session.fail(AaStatus::Parse, e.to_string()),
        };
        let mode = match mode {
            m if m == AaMode::Approx as u32 => Mode::Approx,
            m if m == AaMode::Full as u32 => Mode::Full,
            m if m == AaMode::FullNoApprox as u32 => Mode::FullNoApprox,
            _ => return session.fail(AaStatus::InvalidMode, format!("unknown mode {mode}")),
        };
        let mut req = AbductionRequest::new(onto, psi, f, mode);
        if timeout_ms > 0 {
            req.budget = Budget::with_timeout_ms(timeout_ms);
        }
        let report = match abduce(&req) {
            Ok(r) => r,
            Err(e) => return session.fail(abduction_status(&e), e.to_string()),
        };
        let table = &req.ontology.symbols;
        session.report = CString::new(report.to_json(table).to_string()).ok();
        match &report.hypothesis {
            Some(h) => {
                session.hypothesis = CString::new(render_hypothesis(h, table).trim_end()).ok();
                AaStatus::Ok
            }
            None if report.timeout => session.fail(AaStatus::Timeout, "budget exceeded"),
            None => session.fail(AaStatus::NoHypothesis, "no hypothesis"),
        }
    })
}

/// Decides whether the session ontology entails `axiom`; writes 1 or 0 to
/// `out`.
///
/// # Safety
/// `s` must be a live session, `axiom` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aa_session_entails(s: *mut AaSession, axiom: *const c_char, out: *mut i32) -> AaStatus {
    with_session(s, |session| {
        session.clear();
        if out.is_null() {
            return session.fail(AaStatus::NullArgument, "out is null");
        }
        let text = match arg(axiom) {
            Ok(t) => t,
            Err(status) => return session.fail(status, "axiom is null or not UTF-8"),
        };
        let Some(onto) = session.ontology.as_ref() else {
            return session.fail(AaStatus::NoOntology, "no ontology loaded");
        };
        let mut onto = onto.clone();
        let ax = match parse_axiom(text, &mut onto.symbols) {
            Ok(a) => a,
            Err(e) => return session.fail(AaStatus::Parse, e.to_string()),
        };
        match Reasoner::default().entails(&onto, &ax) {
            Ok(b) => {
                *out = b as i32;
                AaStatus::Ok
            }
            Err(TableauError::FixpointUnsupported) => {
                session.fail(AaStatus::Unsupported, "fixpoints are not supported")
            }
            Err(TableauError::Timeout) => session.fail(AaStatus::Timeout, "timeout"),
        }
    })
}

/// The hypothesis of the last successful `aa_session_abduce`, or null.
///
/// # Safety
/// `s` must be a live session or null.
#[no_mangle]
pub unsafe extern "C" fn aa_session_hypothesis(s: *const AaSession) -> *const c_char {
    s.as_ref().map_or(ptr::null(), |s| string_ptr(&s.hypothesis))
}

/// The JSON report of the last `aa_session_abduce` that ran the pipeline, or null.
///
/// # Safety
/// `s` must be a live session or null.
#[no_mangle]
pub unsafe extern "C" fn aa_session_report_json(s: *const AaSession) -> *const c_char {
    s.as_ref().map_or(ptr::null(), |s| string_ptr(&s.report))
}

/// The message for the last failed call, or null.
///
/// # Safety
/// `s` must be a live session or null.
#[no_mangle]
pub unsafe extern "C" fn aa_session_last_error(s: *const AaSession) -> *const c_char {
    s.as_ref().map_or(ptr::null(), |s| string_ptr(&s.error))
}

/// A static description of `status`.
#[no_mangle]
pub extern "C" fn aa_status_str(status: AaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AaStatus::Ok => c"ok",
        AaStatus::NullArgument => c"null argument",
        AaStatus::InvalidUtf8 => c"invalid UTF-8",
        AaStatus::Parse => c"parse error",
        AaStatus::NoOntology => c"no ontology loaded",
        AaStatus::InconsistentOntology => c"inconsistent ontology",
        AaStatus::ObservationInconsistent => c"observation inconsistent with the ontology",
        AaStatus::ObservationEntailed => c"observation already entailed",
        AaStatus::NoHypothesis => c"no hypothesis",
        AaStatus::InvalidSignature => c"invalid forgetting signature",
        AaStatus::Timeout => c"timeout",
        AaStatus::Unsupported => c"unsupported input",
        AaStatus::InvalidMode => c"invalid mode",
        AaStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn aa_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
