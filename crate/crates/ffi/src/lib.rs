//! C interface to the `mtilp` learner.
//!
//! Handles are opaque pointers owned by the caller and released with the
//! matching `_free` function. Every fallible call returns an
//! [`MtilpStatus`]; on failure a description is available from
//! [`mtilp_last_error`] on the same thread until the next failing call.
//! Strings returned to the caller are freed with [`mtilp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use mtilp::datasets::TaskDir;
use mtilp::scheduler::{run, MultiTaskProblem, RunOutcome, StrategyConfig, StrategyKind};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtilpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Dataset = 3,
    UnknownStrategy = 4,
    /// The requested task has no solution in this run.
    NotFound = 5,
    Panic = 6,
}

/// A loaded multi-task problem.
pub struct MtilpDataset {
    problem: MultiTaskProblem,
}

/// The result of one strategy run.
pub struct MtilpRun {
    outcome: RunOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: MtilpStatus, msg: impl Into<String>) -> MtilpStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`MtilpStatus::Panic`].
fn guard(f: impl FnOnce() -> MtilpStatus) -> MtilpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(MtilpStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MtilpStatus> {
    if s.is_null() {
        return Err(fail(MtilpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(MtilpStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// The last error message on this thread, or an empty string. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn mtilp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a dataset directory.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtilp_dataset_load(path: *const c_char, out: *mut *mut MtilpDataset) -> MtilpStatus {
    guard(|| {
        if out.is_null() {
            return fail(MtilpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match TaskDir::load_dir(Path::new(path)).and_then(|d| d.to_problem()) {
            Ok(problem) => {
                *out = Box::into_raw(Box::new(MtilpDataset { problem }));
                MtilpStatus::Ok
            }
            Err(e) => fail(MtilpStatus::Dataset, e.to_string()),
        }
    })
}

/// Releases a dataset. Null is ignored.
///
/// # Safety
/// `ds` must come from [`mtilp_dataset_load`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtilp_dataset_free(ds: *mut MtilpDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Number of tasks in the dataset.
///
/// # Safety
/// `ds` must be a live dataset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtilp_dataset_task_count(ds: *const MtilpDataset, out: *mut usize) -> MtilpStatus {
    if ds.is_null() || out.is_null() {
        return fail(MtilpStatus::NullPointer, "null argument");
    }
    *out = (*ds).problem.tasks().len();
    MtilpStatus::Ok
}

/// Runs one strategy over the dataset. `strategy` is one of `naive`, `id`,
/// `reset-id`, `reset-bfs`, `prio-ex`, `prio-cons`. A `timeout_ms` of 0
/// means no timeout.
///
/// # Safety
/// `ds` must be a live dataset handle, `strategy` a NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtilp_run(
    ds: *const MtilpDataset,
    strategy: *const c_char,
    preserve: bool,
    timeout_ms: u64,
    seed: u64,
    out: *mut *mut MtilpRun,
) -> MtilpStatus {
    guard(|| {
        if ds.is_null() || out.is_null() {
            return fail(MtilpStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let kind: StrategyKind = match read_str(strategy).map(str::parse) {
            Ok(Ok(k)) => k,
            Ok(Err(e)) => return fail(MtilpStatus::UnknownStrategy, e.to_string()),
            Err(s) => return s,
        };
        let mut cfg = StrategyConfig::new(kind).preserve(preserve).seed(seed);
        if timeout_ms > 0 {
            cfg = cfg.timeout(Duration::from_millis(timeout_ms));
        }
        let outcome = run(&(*ds).problem, &cfg);
        *out = Box::into_raw(Box::new(MtilpRun { outcome }));
        MtilpStatus::Ok
    })
}

/// Releases a run. Null is ignored.
///
/// # Safety
/// `r` must come from [`mtilp_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtilp_run_free(r: *mut MtilpRun) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of tasks solved in the run.
///
/// # Safety
/// `r` must be a live run handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtilp_run_solved_count(r: *const MtilpRun, out: *mut usize) -> MtilpStatus {
    if r.is_null() || out.is_null() {
        return fail(MtilpStatus::NullPointer, "null argument");
    }
    *out = (*r).outcome.solutions.len();
    MtilpStatus::Ok
}

/// Total hypotheses tested over all tasks in the run.
///
/// # Safety
/// `r` must be a live run handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtilp_run_tested_count(r: *const MtilpRun, out: *mut u64) -> MtilpStatus {
    if r.is_null() || out.is_null() {
        return fail(MtilpStatus::NullPointer, "null argument");
    }
    *out = (*r).outcome.tested_count();
    MtilpStatus::Ok
}

/// The learned program for `task` as clause text, one clause per line.
/// Returns [`MtilpStatus::NotFound`] if the task was not solved.
///
/// # Safety
/// `r` must be a live run handle, `task` a NUL-terminated string and `out`
/// a valid pointer. The string written to `out` is freed with
/// [`mtilp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mtilp_run_solution(
    r: *const MtilpRun,
    task: *const c_char,
    out: *mut *mut c_char,
) -> MtilpStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(MtilpStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = match read_str(task) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match (*r).outcome.solutions.get(name) {
            Some(s) => {
                *out = CString::new(s.program.to_string()).unwrap_or_default().into_raw();
                MtilpStatus::Ok
            }
            None => fail(MtilpStatus::NotFound, format!("task {name} was not solved")),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtilp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
