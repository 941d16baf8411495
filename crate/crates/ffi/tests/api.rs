use std::ffi::{CStr, CString};
use std::ptr;

use cfhm_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = cfhm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn random_instance_round_trip() {
    let params = c(r#"{"name":"random","n":120,"k":3,"d":8,"d2":8,"n_r":240,"r":2,"seed":5,"c_rates":[[3,0.5]],"d_rates":[[1,2,0.05]]}"#);
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { cfhm_instance_build(params.as_ptr(), &mut inst) }, CfhmStatus::Ok);
    let mut counts = CfhmCounts::default();
    assert_eq!(unsafe { cfhm_instance_counts(inst, &mut counts) }, CfhmStatus::Ok);
    assert_eq!(counts.p_vertices, 120);
    assert!(counts.c_conflicts > 0 && counts.d_conflicts > 0);

    let opts = CfhmRunOptions { seed: 2, ..cfhm_run_options_default() };
    let mut run = ptr::null_mut();
    assert_eq!(unsafe { cfhm_match(inst, &opts, &mut run) }, CfhmStatus::Ok);
    let (mut edges, mut len) = (ptr::null(), 0usize);
    assert_eq!(unsafe { cfhm_run_edges(run, 1, &mut edges, &mut len) }, CfhmStatus::Ok);
    assert!(len > 0);
    assert_eq!(unsafe { cfhm_run_edges(run, 7, &mut edges, &mut len) }, CfhmStatus::InvalidInput);
    assert!(last_error().contains("stage"));

    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cfhm_verify(inst, run, &mut report) }, CfhmStatus::Ok);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"p-perfect\""));
    unsafe { cfhm_string_free(report) };

    let json = unsafe { cfhm_run_report_json(run) };
    assert!(unsafe { CStr::from_ptr(json) }.to_str().unwrap().contains("\"complete\""));
    unsafe { cfhm_string_free(json) };

    let dir = tempfile::tempdir().unwrap();
    let prefix = c(dir.path().join("inst").to_str().unwrap());
    assert_eq!(unsafe { cfhm_instance_save(inst, prefix.as_ptr(), false) }, CfhmStatus::Ok);
    let mut loaded = ptr::null_mut();
    assert_eq!(unsafe { cfhm_instance_load(prefix.as_ptr(), &mut loaded) }, CfhmStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { cfhm_match(loaded, &opts, &mut again) }, CfhmStatus::Ok);
    let (a, b) = unsafe { (cfhm_run_matching_text(run), cfhm_run_matching_text(again)) };
    assert_eq!(unsafe { CStr::from_ptr(a) }, unsafe { CStr::from_ptr(b) });
    unsafe {
        cfhm_string_free(a);
        cfhm_string_free(b);
        cfhm_run_free(again);
        cfhm_run_free(run);
        cfhm_instance_free(loaded);
        cfhm_instance_free(inst);
    }
}

#[test]
fn errors_are_reported() {
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { cfhm_instance_build(ptr::null(), &mut inst) }, CfhmStatus::NullArgument);
    let bad = c(r#"{"name":"ramsey-cycles","n":3}"#);
    assert_eq!(unsafe { cfhm_instance_build(bad.as_ptr(), &mut inst) }, CfhmStatus::InvalidInput);
    assert!(last_error().contains("bad parameters"));
    let covering = c(r#"{"name":"covering"}"#);
    assert_eq!(unsafe { cfhm_instance_build(covering.as_ptr(), &mut inst) }, CfhmStatus::InvalidInput);
    assert!(inst.is_null());
    let missing = c("/nonexistent/prefix");
    assert_eq!(unsafe { cfhm_instance_load(missing.as_ptr(), &mut inst) }, CfhmStatus::InvalidInput);
    assert_eq!(unsafe { cfhm_match(ptr::null(), ptr::null(), ptr::null_mut()) }, CfhmStatus::NullArgument);
    unsafe {
        cfhm_instance_free(ptr::null_mut());
        cfhm_run_free(ptr::null_mut());
        cfhm_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(cfhm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
