use std::ffi::{CStr, CString};
use std::ptr;

use mtilp::datasets::gen_kinship;
use mtilp_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(mtilp_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn learn_kinship_through_the_c_api() {
    let dir = tempfile::tempdir().unwrap();
    gen_kinship(2).unwrap().write_dir(dir.path()).unwrap();
    let path = CString::new(dir.path().to_str().unwrap()).unwrap();
    unsafe {
        let mut ds = ptr::null_mut();
        assert_eq!(mtilp_dataset_load(path.as_ptr(), &mut ds), MtilpStatus::Ok);
        let mut n = 0usize;
        assert_eq!(mtilp_dataset_task_count(ds, &mut n), MtilpStatus::Ok);
        assert_eq!(n, 2);

        let mut run = ptr::null_mut();
        let id = CString::new("id").unwrap();
        assert_eq!(mtilp_run(ds, id.as_ptr(), false, 0, 0, &mut run), MtilpStatus::Ok);
        let mut solved = 0usize;
        mtilp_run_solved_count(run, &mut solved);
        assert_eq!(solved, 2);
        let mut tested = 0u64;
        mtilp_run_tested_count(run, &mut tested);
        assert!(tested > 0);

        let task = CString::new("isGrandmother").unwrap();
        let mut text = ptr::null_mut();
        assert_eq!(mtilp_run_solution(run, task.as_ptr(), &mut text), MtilpStatus::Ok);
        let program = CStr::from_ptr(text).to_str().unwrap().to_owned();
        mtilp_string_free(text);
        assert_eq!(program.trim(), "isGrandmother(A,B):-isGrandfather(C,B),isWife(A,C).");

        let missing = CString::new("noSuchTask").unwrap();
        assert_eq!(mtilp_run_solution(run, missing.as_ptr(), &mut text), MtilpStatus::NotFound);
        assert!(text.is_null());
        assert!(last_error().contains("noSuchTask"));

        mtilp_run_free(run);
        mtilp_dataset_free(ds);
    }
}

#[test]
fn errors_are_reported_with_codes() {
    unsafe {
        let mut ds = ptr::null_mut();
        let bad = CString::new("/definitely/not/here").unwrap();
        assert_eq!(mtilp_dataset_load(bad.as_ptr(), &mut ds), MtilpStatus::Dataset);
        assert!(ds.is_null());
        assert!(last_error().contains("/definitely/not/here"));
        assert_eq!(mtilp_dataset_load(ptr::null(), &mut ds), MtilpStatus::NullPointer);
        assert_eq!(mtilp_dataset_task_count(ptr::null(), ptr::null_mut()), MtilpStatus::NullPointer);

        let dir = tempfile::tempdir().unwrap();
        gen_kinship(2).unwrap().write_dir(dir.path()).unwrap();
        let path = CString::new(dir.path().to_str().unwrap()).unwrap();
        assert_eq!(mtilp_dataset_load(path.as_ptr(), &mut ds), MtilpStatus::Ok);
        let mut run = ptr::null_mut();
        let nope = CString::new("dfs").unwrap();
        assert_eq!(mtilp_run(ds, nope.as_ptr(), false, 0, 0, &mut run), MtilpStatus::UnknownStrategy);
        assert!(run.is_null());
        mtilp_dataset_free(ds);
        mtilp_dataset_free(ptr::null_mut());
        mtilp_run_free(ptr::null_mut());
        mtilp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/mtilp.h");
    for f in [
        "mtilp_last_error",
        "mtilp_dataset_load",
        "mtilp_dataset_free",
        "mtilp_dataset_task_count",
        "mtilp_run(",
        "mtilp_run_free",
        "mtilp_run_solved_count",
        "mtilp_run_tested_count",
        "mtilp_run_solution",
        "mtilp_string_free",
        "MTILP_STATUS_NOT_FOUND = 5",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}
