//! C ABI over `epicomm`.
//!
//! Models are opaque [`EcModel`] handles owned by the caller and released
//! with [`ec_model_free`]. Strings returned through out-parameters are
//! NUL-terminated, heap-allocated and released with [`ec_string_free`].
//! Every fallible call returns an [`EcStatus`]; on failure the message is
//! available from [`ec_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use epicomm::dot::to_dot;
use epicomm::kripke::{format_model_text, parse_model_text};
use epicomm::semantics::satisfies;
use epicomm::transforms::{apply_eee, apply_reading_event, apply_see, apply_sse, ReadingAssignment};
use epicomm::translate::translate;
use epicomm::validity::{check_validity, SearchBounds};
use epicomm::{parse, AgentSet, Error, Model, PointedModel};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    SyntaxError = 10,
    EmptyGroup = 11,
    DanglingWorld = 12,
    MissingAgentRelation = 13,
    UnknownAtom = 14,
    UnknownAgent = 15,
    UnknownWorld = 16,
    DuplicateName = 17,
    EmptyModel = 18,
    TooManyWorlds = 19,
    ModelFormat = 20,
    DefinitionMismatch = 21,
    AlphaNotReflexive = 22,
    MeasureViolation = 23,
    BoundsTooLarge = 24,
    UnknownSchema = 25,
    InvalidBounds = 26,
}

impl From<&Error> for EcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Syntax { .. } => EcStatus::SyntaxError,
            Error::EmptyGroup => EcStatus::EmptyGroup,
            Error::DanglingWorld(_) => EcStatus::DanglingWorld,
            Error::MissingAgentRelation(_) => EcStatus::MissingAgentRelation,
            Error::UnknownAtom(_) => EcStatus::UnknownAtom,
            Error::UnknownAgent(_) => EcStatus::UnknownAgent,
            Error::UnknownWorld(_) => EcStatus::UnknownWorld,
            Error::DuplicateName(_) => EcStatus::DuplicateName,
            Error::EmptyModel => EcStatus::EmptyModel,
            Error::TooManyWorlds(_) => EcStatus::TooManyWorlds,
            Error::ModelFormat { .. } => EcStatus::ModelFormat,
            Error::DefinitionMismatch => EcStatus::DefinitionMismatch,
            Error::AlphaNotReflexive(_) => EcStatus::AlphaNotReflexive,
            Error::MeasureViolation(_) => EcStatus::MeasureViolation,
            Error::BoundsTooLarge(_) => EcStatus::BoundsTooLarge,
            Error::UnknownSchema(_) => EcStatus::UnknownSchema,
            Error::InvalidBounds(_) => EcStatus::InvalidBounds,
        }
    }
}

/// Opaque model handle with an optional designated world.
pub struct EcModel {
    model: Model,
    point: Option<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(EcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EcStatus::from(&e), format!("{}: {e}", e.code()))
    }
}

type FfiResult<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> EcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EcStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(EcStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(EcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn model_arg<'a>(p: *const EcModel) -> FfiResult<&'a EcModel> {
    p.as_ref().ok_or_else(|| null("model"))
}

/// Writes `value()` to `out`; the value is only built when `out` is usable.
unsafe fn put<T>(out: *mut T, value: impl FnOnce() -> T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value());
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn boxed(model: Model, point: Option<usize>) -> *mut EcModel {
    Box::into_raw(Box::new(EcModel { model, point }))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next FFI call on the same thread.
#[no_mangle]
pub extern "C" fn ec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a model in the text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_model_parse(text: *const c_char, out: *mut *mut EcModel) -> EcStatus {
    guard(|| {
        let file = parse_model_text(str_arg(text, "text")?)?;
        put(out, || boxed(file.model, file.point), "out")
    })
}

/// Releases a model. NULL is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ec_model_free(model: *mut EcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of worlds, or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_model_world_count(model: *const EcModel) -> usize {
    model.as_ref().map_or(0, |m| m.model.world_count())
}

/// Renders a model in the text format.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_model_to_text(model: *const EcModel, out: *mut *mut c_char) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        put(out, || c_string(format_model_text(&m.model, m.point)), "out")
    })
}

/// Renders a model in Graphviz format.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_model_to_dot(model: *const EcModel, out: *mut *mut c_char) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        put(out, || c_string(to_dot(&m.model, m.point)), "out")
    })
}

/// Evaluates `formula` at the named world.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ec_check(
    model: *const EcModel,
    world: *const c_char,
    formula: *const c_char,
    out: *mut bool,
) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        let pm = PointedModel::at(&m.model, str_arg(world, "world")?)?;
        let f = parse(str_arg(formula, "formula")?)?;
        let holds = satisfies(&pm, &f)?;
        put(out, || holds, "out")
    })
}

/// Everyone shares everything.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_apply_eee(model: *const EcModel, out: *mut *mut EcModel) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        put(out, || boxed(apply_eee(&m.model), m.point), "out")
    })
}

/// The comma-separated `agents` share everything.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ec_apply_see(model: *const EcModel, agents: *const c_char, out: *mut *mut EcModel) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        let s = AgentSet::parse_list(str_arg(agents, "agents")?);
        let r = apply_see(&m.model, &s)?;
        put(out, || boxed(r, m.point), "out")
    })
}

/// The comma-separated `agents` share what they know about `topic`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ec_apply_sse(
    model: *const EcModel,
    agents: *const c_char,
    topic: *const c_char,
    out: *mut *mut EcModel,
) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        let s = AgentSet::parse_list(str_arg(agents, "agents")?);
        let t = parse(str_arg(topic, "topic")?)?;
        let r = apply_sse(&m.model, &s, &t)?;
        put(out, || boxed(r, m.point), "out")
    })
}

/// Reading event with an assignment such as `a:a,b;b:b`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ec_apply_read(model: *const EcModel, alpha: *const c_char, out: *mut *mut EcModel) -> EcStatus {
    guard(|| {
        let m = model_arg(model)?;
        let a = ReadingAssignment::parse(str_arg(alpha, "alpha")?)?;
        let r = apply_reading_event(&m.model, &a)?;
        put(out, || boxed(r, m.point), "out")
    })
}

/// Static translation of `formula`. `agents` is the full roster; NULL
/// means the agents occurring in the formula.
///
/// # Safety
/// `formula` must be a valid string, `agents` NULL or a valid string, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_translate(formula: *const c_char, agents: *const c_char, out: *mut *mut c_char) -> EcStatus {
    guard(|| {
        let f = parse(str_arg(formula, "formula")?)?;
        let roster = if agents.is_null() {
            f.agents()
        } else {
            AgentSet::parse_list(str_arg(agents, "agents")?)
        };
        let t = translate(&f, &roster)?;
        put(out, || c_string(t.to_string()), "out")
    })
}

/// Bounded validity search. `sample == 0` searches exhaustively; otherwise
/// `sample` random models are drawn with `seed`. On a countermodel,
/// `*valid` is false and, if `countermodel` is not NULL, it receives a new
/// handle whose designated world falsifies the formula.
///
/// # Safety
/// String arguments must be valid; `valid` must be a valid pointer;
/// `countermodel` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ec_validity(
    formula: *const c_char,
    max_worlds: usize,
    agents: *const c_char,
    atoms: *const c_char,
    sample: usize,
    seed: u64,
    valid: *mut bool,
    countermodel: *mut *mut EcModel,
) -> EcStatus {
    guard(|| {
        let f = parse(str_arg(formula, "formula")?)?;
        let split = |s: &str| s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect::<Vec<_>>();
        let agents = split(str_arg(agents, "agents")?);
        let atoms = split(str_arg(atoms, "atoms")?);
        let mut bounds = SearchBounds::exhaustive(max_worlds, &refs(&agents), &refs(&atoms));
        if sample > 0 {
            bounds = bounds.sampled(sample, seed);
        }
        if valid.is_null() {
            return Err(null("valid"));
        }
        let verdict = check_validity(&f, &bounds)?;
        valid.write(verdict.is_valid());
        if let (Some(pm), false) = (verdict.countermodel(), countermodel.is_null()) {
            countermodel.write(boxed(pm.model.clone(), Some(pm.point)));
        }
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Stable name of a status, e.g. `"unknown-world"`.
#[no_mangle]
pub extern "C" fn ec_status_name(status: EcStatus) -> *const c_char {
    let name: &'static CStr = match status {
        EcStatus::Ok => c"ok",
        EcStatus::NullPointer => c"null-pointer",
        EcStatus::InvalidUtf8 => c"invalid-utf8",
        EcStatus::Panic => c"panic",
        EcStatus::SyntaxError => c"syntax-error",
        EcStatus::EmptyGroup => c"empty-group",
        EcStatus::DanglingWorld => c"dangling-world",
        EcStatus::MissingAgentRelation => c"missing-agent-relation",
        EcStatus::UnknownAtom => c"unknown-atom",
        EcStatus::UnknownAgent => c"unknown-agent",
        EcStatus::UnknownWorld => c"unknown-world",
        EcStatus::DuplicateName => c"duplicate-name",
        EcStatus::EmptyModel => c"empty-model",
        EcStatus::TooManyWorlds => c"too-many-worlds",
        EcStatus::ModelFormat => c"model-format",
        EcStatus::DefinitionMismatch => c"definition-mismatch",
        EcStatus::AlphaNotReflexive => c"alpha-not-reflexive",
        EcStatus::MeasureViolation => c"measure-violation",
        EcStatus::BoundsTooLarge => c"bounds-too-large",
        EcStatus::UnknownSchema => c"unknown-schema",
        EcStatus::InvalidBounds => c"invalid-bounds",
    };
    name.as_ptr()
}
