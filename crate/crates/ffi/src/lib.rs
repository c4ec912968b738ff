//! C interface to the `papni` learner.
//!
//! Datasets and models cross the boundary as opaque handles created by a
//! `*_parse` or `papni_learn*` call and released with the matching `*_free`.
//! Fallible calls return a [`PapniStatus`]; the message of the most recent
//! failure on the calling thread is available from [`papni_last_error`].
//! Strings returned by the library are owned by the caller and must be
//! released with [`papni_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use papni::automata::{dfa_to_dot, vdpa_to_dot, Acceptor, Model};
use papni::{parse_alphabet, parse_dataset, Backend, Error, LabeledDataset, PapniConfig, Symbol};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PapniStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    LabelConflict = 4,
    NoWellMatchedSamples = 5,
    GenerationFailed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PapniBackend {
    Rpni = 0,
    Edsm = 1,
}

impl From<PapniBackend> for Backend {
    fn from(b: PapniBackend) -> Self {
        match b {
            PapniBackend::Rpni => Backend::Rpni,
            PapniBackend::Edsm => Backend::Edsm,
        }
    }
}

/// Opaque labelled dataset.
pub struct PapniDataset(LabeledDataset<Symbol>);

/// Opaque learned or parsed automaton (DFA or VDPA).
pub struct PapniModel(Model);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> PapniStatus {
    match err {
        Error::LabelConflict(_) => PapniStatus::LabelConflict,
        Error::NoWellMatchedSamples => PapniStatus::NoWellMatchedSamples,
        Error::GenerationFailed(_) => PapniStatus::GenerationFailed,
        _ => PapniStatus::InvalidInput,
    }
}

struct Fail(PapniStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PapniStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PapniStatus::Ok,
        Ok(Err(Fail(status))) => status,
        Err(_) => {
            set_error("internal panic");
            PapniStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        set_error("null string argument");
        return Err(Fail(PapniStatus::NullPointer));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        Fail(PapniStatus::InvalidUtf8)
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        Fail(PapniStatus::NullPointer)
    })
}

fn out_ptr<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(Fail(PapniStatus::NullPointer));
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn papni_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a dataset in the `+`/`-` line format.
///
/// # Safety
/// `text_ptr` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn papni_dataset_parse(text_ptr: *const c_char, out: *mut *mut PapniDataset) -> PapniStatus {
    guard(|| {
        out_ptr(out)?;
        let d = parse_dataset(text(text_ptr)?)?;
        *out = Box::into_raw(Box::new(PapniDataset(d)));
        Ok(())
    })
}

/// Number of samples in `dataset`, or 0 for a null handle.
///
/// # Safety
/// `dataset` must be null or a live handle from [`papni_dataset_parse`].
#[no_mangle]
pub unsafe extern "C" fn papni_dataset_len(dataset: *const PapniDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.0.len())
}

/// # Safety
/// `dataset` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn papni_dataset_free(dataset: *mut PapniDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Learns a VDPA from `dataset` using the alphabet file contents in
/// `alphabet`.
///
/// # Safety
/// `dataset` must be a live handle, `alphabet` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn papni_learn(
    dataset: *const PapniDataset,
    alphabet: *const c_char,
    backend: PapniBackend,
    out: *mut *mut PapniModel,
) -> PapniStatus {
    guard(|| {
        out_ptr(out)?;
        let d = handle(dataset)?;
        let alphabet = parse_alphabet(text(alphabet)?)?;
        let cfg = PapniConfig { backend: backend.into(), report_dropped: false };
        let (vdpa, _) = papni::papni_learn(&d.0, &alphabet, cfg)?;
        *out = Box::into_raw(Box::new(PapniModel(Model::Vdpa(vdpa))));
        Ok(())
    })
}

/// Learns a DFA directly over the raw words of `dataset`.
///
/// # Safety
/// `dataset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn papni_learn_dfa(
    dataset: *const PapniDataset,
    backend: PapniBackend,
    out: *mut *mut PapniModel,
) -> PapniStatus {
    guard(|| {
        out_ptr(out)?;
        let d = handle(dataset)?;
        let dfa = Backend::from(backend).learn(&d.0)?;
        *out = Box::into_raw(Box::new(PapniModel(Model::Dfa(dfa))));
        Ok(())
    })
}

/// Parses a model in the textual automaton format.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn papni_model_parse(text_ptr: *const c_char, out: *mut *mut PapniModel) -> PapniStatus {
    guard(|| {
        out_ptr(out)?;
        let m = Model::parse(text(text_ptr)?)?;
        *out = Box::into_raw(Box::new(PapniModel(m)));
        Ok(())
    })
}

/// Classifies a whitespace-separated word. Symbols outside the model's
/// alphabet reject.
///
/// # Safety
/// `model` must be a live handle, `word` a NUL-terminated string and
/// `accepted` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn papni_model_accepts(
    model: *const PapniModel,
    word: *const c_char,
    accepted: *mut bool,
) -> PapniStatus {
    guard(|| {
        if accepted.is_null() {
            set_error("null output pointer");
            return Err(Fail(PapniStatus::NullPointer));
        }
        let m = handle(model)?;
        let symbols = text(word)?
            .split_whitespace()
            .map(Symbol::new)
            .collect::<Result<Vec<_>, _>>()?;
        *accepted = m.0.classify(&symbols);
        Ok(())
    })
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn papni_model_size(model: *const PapniModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.size())
}

/// Whether the model is a VDPA (as opposed to a DFA).
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn papni_model_is_vdpa(model: *const PapniModel) -> bool {
    matches!(model.as_ref(), Some(PapniModel(Model::Vdpa(_))))
}

/// Canonical textual form; free with [`papni_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn papni_model_to_text(model: *const PapniModel) -> *mut c_char {
    model.as_ref().map_or(ptr::null_mut(), |m| to_c_string(m.0.to_text()))
}

/// Graphviz rendering; free with [`papni_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn papni_model_to_dot(model: *const PapniModel) -> *mut c_char {
    model.as_ref().map_or(ptr::null_mut(), |m| {
        to_c_string(match &m.0 {
            Model::Dfa(d) => dfa_to_dot(d),
            Model::Vdpa(v) => vdpa_to_dot(v),
        })
    })
}

/// # Safety
/// `model` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn papni_model_free(model: *mut PapniModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn papni_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DATA: &str = "-\n+ ( )\n+ ( ( ) )\n- ( ) ( )\n- ( ) ( ) ( )\n- ( ) ( ( ) )\n- (\n- ( ) )\n- ) (\n- ( ( )\n- ( ( ) ) ) (\n";
    const ALPHABET: &str = "internal:\ncall: (\nreturn: )\n";

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn dataset(text: &str) -> *mut PapniDataset {
        let mut d = ptr::null_mut();
        assert_eq!(papni_dataset_parse(c(text).as_ptr(), &mut d), PapniStatus::Ok);
        d
    }

    unsafe fn accepts(m: *const PapniModel, w: &str) -> bool {
        let mut out = false;
        assert_eq!(papni_model_accepts(m, c(w).as_ptr(), &mut out), PapniStatus::Ok);
        out
    }

    #[test]
    fn learn_worked_example() {
        unsafe {
            let d = dataset(DATA);
            assert_eq!(papni_dataset_len(d), 11);
            let mut m = ptr::null_mut();
            assert_eq!(papni_learn(d, c(ALPHABET).as_ptr(), PapniBackend::Rpni, &mut m), PapniStatus::Ok);
            assert_eq!(papni_model_size(m), 3);
            assert!(papni_model_is_vdpa(m));
            assert!(accepts(m, "( ( ( ) ) )"));
            assert!(!accepts(m, ") ( )"));

            let mut r = ptr::null_mut();
            assert_eq!(papni_learn_dfa(d, PapniBackend::Rpni, &mut r), PapniStatus::Ok);
            assert_eq!(papni_model_size(r), 5);
            assert!(accepts(r, ") ( )"));

            papni_model_free(r);
            papni_model_free(m);
            papni_dataset_free(d);
        }
    }

    #[test]
    fn text_round_trip_and_dot() {
        unsafe {
            let d = dataset(DATA);
            let mut m = ptr::null_mut();
            assert_eq!(papni_learn(d, c(ALPHABET).as_ptr(), PapniBackend::Edsm, &mut m), PapniStatus::Ok);
            let t = papni_model_to_text(m);
            let mut back = ptr::null_mut();
            assert_eq!(papni_model_parse(t, &mut back), PapniStatus::Ok);
            let t2 = papni_model_to_text(back);
            assert_eq!(CStr::from_ptr(t), CStr::from_ptr(t2));
            let dot = papni_model_to_dot(m);
            assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph"));
            for s in [t, t2, dot] {
                papni_string_free(s);
            }
            papni_model_free(back);
            papni_model_free(m);
            papni_dataset_free(d);
        }
    }

    #[test]
    fn error_codes() {
        unsafe {
            let mut d = ptr::null_mut();
            assert_eq!(papni_dataset_parse(ptr::null(), &mut d), PapniStatus::NullPointer);
            assert_eq!(papni_dataset_parse(c("+ a\n- a\n").as_ptr(), &mut d), PapniStatus::LabelConflict);
            assert!(!papni_last_error().is_null());
            assert_eq!(papni_dataset_parse(c("? a\n").as_ptr(), &mut d), PapniStatus::InvalidInput);
            let bad = [0xffu8, 0];
            assert_eq!(papni_dataset_parse(bad.as_ptr().cast(), &mut d), PapniStatus::InvalidUtf8);

            let d = dataset("- ) (\n");
            let mut m = ptr::null_mut();
            assert_eq!(
                papni_learn(d, c(ALPHABET).as_ptr(), PapniBackend::Rpni, &mut m),
                PapniStatus::NoWellMatchedSamples
            );
            assert!(m.is_null());
            let mut flag = false;
            assert_eq!(papni_model_accepts(ptr::null(), c("(").as_ptr(), &mut flag), PapniStatus::NullPointer);
            assert_eq!(papni_model_size(ptr::null()), 0);
            assert!(papni_model_to_text(ptr::null()).is_null());
            papni_dataset_free(d);
            papni_dataset_free(ptr::null_mut());
            papni_model_free(ptr::null_mut());
            papni_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn header_is_generated() {
        let header = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/include/papni.h"));
        for name in ["papni_learn", "papni_model_free", "PapniStatus", "PapniModel"] {
            assert!(header.contains(name), "{name} missing from header");
        }
    }
}
