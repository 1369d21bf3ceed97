//! C ABI over the blinfty engine.
//!
//! Documents live behind an opaque `BlDocument` handle. Every call returns a
//! `BlStatus`; on anything but `BL_STATUS_OK` the message is available from
//! `bl_last_error` on the same thread. Strings handed out by the library must
//! be released with `bl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blinfty::blinfty::{check_structure, Augmentation, Status};
use blinfty::invariants::{combine, order_o, order_o_tilde, torsion, Bounded, HierarchyValue, SearchBounds};
use blinfty::io::{cli, fixture, Document};
use blinfty::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Inconclusive = 5,
    Inconsistent = 6,
    Structural = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlBoundedKind {
    Exact = 0,
    AtMost = 1,
    NotFound = 2,
}

/// A bounded search answer; `level` is meaningless for `NotFound`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlBounded {
    pub kind: BlBoundedKind,
    pub level: u32,
}

/// Opaque parsed document.
pub struct BlDocument {
    doc: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BlStatus {
    match e {
        Error::Parse { .. } => BlStatus::Parse,
        Error::Inconclusive(_) => BlStatus::Inconclusive,
        Error::Inconsistent(_) => BlStatus::Inconsistent,
        Error::InvalidInput(_) | Error::UnknownGenerator(_) | Error::MissingAction(_) => BlStatus::InvalidInput,
        _ => BlStatus::Structural,
    }
}

struct Fail(BlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BlStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BlStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn doc_arg<'a>(p: *const BlDocument) -> Result<&'a Document, Fail> {
    p.as_ref()
        .map(|d| &d.doc)
        .ok_or_else(|| Fail(BlStatus::NullArgument, "document handle is null".into()))
}

fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    unsafe { p.as_mut() }.ok_or_else(|| Fail(BlStatus::NullArgument, "output pointer is null".into()))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let slot = out_arg(out)?;
    let c = CString::new(s).map_err(|_| Fail(BlStatus::InvalidInput, "string contains NUL".into()))?;
    *slot = c.into_raw();
    Ok(())
}

fn bounded(b: Bounded) -> BlBounded {
    match b {
        Bounded::Exact(k) => BlBounded {
            kind: BlBoundedKind::Exact,
            level: k as u32,
        },
        Bounded::AtMost(k) => BlBounded {
            kind: BlBoundedKind::AtMost,
            level: k as u32,
        },
        Bounded::NotFound => BlBounded {
            kind: BlBoundedKind::NotFound,
            level: 0,
        },
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn bl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_document_parse(text: *const c_char, out: *mut *mut BlDocument) -> BlStatus {
    guard(|| {
        let slot = out_arg(out)?;
        *slot = ptr::null_mut();
        let doc = Document::parse(str_arg(text, "text")?)?;
        *slot = Box::into_raw(Box::new(BlDocument { doc }));
        Ok(())
    })
}

/// Loads a bundled fixture by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_fixture(name: *const c_char, out: *mut *mut BlDocument) -> BlStatus {
    guard(|| {
        let slot = out_arg(out)?;
        *slot = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let text = fixture(name).ok_or_else(|| Fail(BlStatus::InvalidInput, format!("no fixture `{name}`")))?;
        *slot = Box::into_raw(Box::new(BlDocument {
            doc: Document::parse(text)?,
        }));
        Ok(())
    })
}

/// # Safety
/// `doc` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bl_document_free(doc: *mut BlDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_document_serialize(doc: *const BlDocument, out: *mut *mut c_char) -> BlStatus {
    guard(|| give_string(doc_arg(doc)?.serialize(), out))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks the document's structure on every input word with at most
/// `max_arity` letters. `*verified` is 1 or 0.
///
/// # Safety
/// `doc` must be a live handle and `verified` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_check_structure(doc: *const BlDocument, max_arity: usize, verified: *mut i32) -> BlStatus {
    guard(|| {
        let alg = doc_arg(doc)?.structure()?;
        let s = check_structure(&alg, max_arity, None)?;
        *out_arg(verified)? = i32::from(matches!(s, Status::Verified));
        Ok(())
    })
}

/// Torsion of the document's structure with at most `word_bound` clusters
/// and `max_letters` letters.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_torsion(
    doc: *const BlDocument,
    word_bound: usize,
    max_letters: usize,
    out: *mut BlBounded,
) -> BlStatus {
    guard(|| {
        let alg = doc_arg(doc)?.structure()?;
        let t = torsion(&alg, &SearchBounds::new(word_bound, max_letters))?;
        *out_arg(out)? = bounded(t.value);
        Ok(())
    })
}

/// O and Õ for the first augmentation (zero if none) and the pointed table.
///
/// # Safety
/// `doc` must be a live handle; `o` and `o_tilde` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bl_order(
    doc: *const BlDocument,
    word_bound: usize,
    max_letters: usize,
    o: *mut BlBounded,
    o_tilde: *mut BlBounded,
) -> BlStatus {
    guard(|| {
        let d = doc_arg(doc)?;
        let alg = d.structure()?;
        let eps = d.augmentations()?.into_iter().next().unwrap_or_else(Augmentation::zero);
        let pm = d.pointed()?;
        let a = order_o(&alg, &eps, &pm, word_bound)?;
        let b = order_o_tilde(&alg, &eps, &pm, &SearchBounds::new(word_bound, max_letters))?;
        *out_arg(o)? = bounded(a.value);
        *out_arg(o_tilde)? = bounded(b.value);
        Ok(())
    })
}

/// Combines two hierarchy values written as `<level>^<zone>`.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_hierarchy_combine(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> BlStatus {
    guard(|| {
        let a: HierarchyValue = str_arg(a, "a")?.parse()?;
        let b: HierarchyValue = str_arg(b, "b")?.parse()?;
        give_string(combine(a, b).to_string(), out)
    })
}

/// Runs the command-line front end on `argv[0..argc]` (without the program
/// name). The report goes to `*out_stdout`, the exit code to `*exit_code`.
/// Returns `BL_STATUS_OK` whenever the command ran, whatever its exit code.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    exit_code: *mut i32,
) -> BlStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(Fail(BlStatus::NullArgument, "argv is null".into()));
        }
        let mut args = vec!["blinfty".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argument")?.to_string());
        }
        let r = cli::run(args);
        *out_arg(exit_code)? = r.code;
        give_string(r.stdout, out_stdout)
    })
}
