//! C ABI over the `cfhm` library.
//!
//! Instances and runs are opaque heap handles released with their `_free`
//! functions. Every fallible call returns a [`CfhmStatus`]; on failure the
//! message is available from [`cfhm_last_error`] on the same thread. Strings
//! returned to the caller are released with [`cfhm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use cfhm::apps::ramsey::RamseyParams;
use cfhm::apps::steiner::complete_candidates;
use cfhm::cli::verify_instance;
use cfhm::error::Error;
use cfhm::hypergraph::EdgeClass;
use cfhm::instance::{AppParams, Instance};
use cfhm::pipeline::{self, PipelineConfig, RunOutput, Status};
use cfhm::random::RandomSpec;

/// Status codes; the nonzero values 2 to 4 agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfhmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    EmptySafeSet = 4,
    VerificationFailed = 5,
    Internal = 6,
}

/// A built or loaded instance.
pub struct CfhmInstance {
    inner: Instance,
}

/// The result of one pipeline run.
pub struct CfhmRun {
    inner: RunOutput,
}

/// Sizes of an instance.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CfhmCounts {
    pub p_vertices: usize,
    pub h1_edges: usize,
    pub h2_edges: usize,
    pub c_conflicts: usize,
    pub d_conflicts: usize,
}

/// Pipeline settings; `cfhm_run_options_default` fills them in.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CfhmRunOptions {
    /// Degree bound; zero or negative means the instance's declared one.
    pub d: f64,
    pub eps: f64,
    pub seed: u64,
    pub max_rounds: usize,
    pub stage1_only: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: CfhmStatus, msg: impl Into<String>) -> CfhmStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> CfhmStatus {
    let status = match e {
        Error::EmptySafeSet { .. } => CfhmStatus::EmptySafeSet,
        _ => CfhmStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CfhmStatus) -> CfhmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CfhmStatus::Internal, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, CfhmStatus> {
    if p.is_null() {
        return Err(fail(CfhmStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CfhmStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn build_from_params(app: &AppParams) -> Result<Instance, Error> {
    match app.clone() {
        AppParams::RamseyCycles { n, k, cycle_len, delta } => Instance::ramsey(&RamseyParams::Cycles { n, k, cycle_len, delta }),
        AppParams::RamseyK4 { n, delta, seed, rho } => Instance::ramsey(&RamseyParams::K4 { n, delta, seed, rho }),
        AppParams::Steiner { m, s, t, ell, kappa } => {
            let kappa = if kappa.is_empty() { complete_candidates(m, s) } else { kappa };
            Instance::steiner(m, s, t, kappa, ell)
        }
        AppParams::Random { n, k, d, d2, n_r, r, seed, c_rates, d_rates } => Instance::random(&RandomSpec { n, k, d, d2, n_r, r, seed }, &c_rates, &d_rates),
        AppParams::Covering | AppParams::Explicit => Err(Error::Input(format!("'{}' instances need input files; use cfhm_instance_load", app.name()))),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cfhm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cfhm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds an instance from JSON parameters, e.g.
/// `{"name":"ramsey-cycles","n":8,"k":2,"cycle_len":4,"delta":0.25}`.
/// A Steiner `kappa` of `[]` means every `s`-subset.
///
/// # Safety
/// `params_json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfhm_instance_build(params_json: *const c_char, out: *mut *mut CfhmInstance) -> CfhmStatus {
    guard(|| {
        if out.is_null() {
            return fail(CfhmStatus::NullArgument, "out is null");
        }
        let text = match str_arg(params_json, "params_json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let app: AppParams = match serde_json::from_str(text) {
            Ok(a) => a,
            Err(e) => return fail(CfhmStatus::InvalidInput, format!("bad parameters: {e}")),
        };
        match build_from_params(&app) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CfhmInstance { inner }));
                CfhmStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Loads the instance stored under `prefix` (`.hg` or `.json`, `.cf`, `.meta.json`).
///
/// # Safety
/// `prefix` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfhm_instance_load(prefix: *const c_char, out: *mut *mut CfhmInstance) -> CfhmStatus {
    guard(|| {
        if out.is_null() {
            return fail(CfhmStatus::NullArgument, "out is null");
        }
        let prefix = match str_arg(prefix, "prefix") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match Instance::load(Path::new(prefix)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CfhmInstance { inner }));
                CfhmStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Writes the instance files under `prefix`.
///
/// # Safety
/// `inst` must come from this library; `prefix` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn cfhm_instance_save(inst: *const CfhmInstance, prefix: *const c_char, json: bool) -> CfhmStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else { return fail(CfhmStatus::NullArgument, "inst is null") };
        let prefix = match str_arg(prefix, "prefix") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match inst.inner.save(Path::new(prefix), json) {
            Ok(_) => CfhmStatus::Ok,
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `inst` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfhm_instance_counts(inst: *const CfhmInstance, out: *mut CfhmCounts) -> CfhmStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else { return fail(CfhmStatus::NullArgument, "null argument") };
        let h = &inst.inner.h;
        let (c, d) = inst.inner.conflict_lists();
        *out = CfhmCounts {
            p_vertices: h.n_p(),
            h1_edges: h.edges_of(EdgeClass::H1).len(),
            h2_edges: h.edges_of(EdgeClass::H2).len(),
            c_conflicts: c.len(),
            d_conflicts: d.len(),
        };
        CfhmStatus::Ok
    })
}

/// # Safety
/// `inst` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cfhm_instance_free(inst: *mut CfhmInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

#[no_mangle]
pub extern "C" fn cfhm_run_options_default() -> CfhmRunOptions {
    CfhmRunOptions { d: 0.0, eps: 0.1, seed: 0, max_rounds: 10_000, stage1_only: false }
}

/// Runs both stages. On `Ok` and on `CapExceeded` a run handle is stored in
/// `out`; after a cap the matching is the last resampled state.
///
/// # Safety
/// `inst` and `opts` must be valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfhm_match(inst: *const CfhmInstance, opts: *const CfhmRunOptions, out: *mut *mut CfhmRun) -> CfhmStatus {
    guard(|| {
        let (Some(inst), Some(opts), false) = (inst.as_ref(), opts.as_ref(), out.is_null()) else {
            return fail(CfhmStatus::NullArgument, "null argument");
        };
        let d = if opts.d > 0.0 { opts.d } else { inst.inner.meta.d };
        let mut cfg = PipelineConfig::new(d, opts.eps, opts.seed);
        cfg.max_rounds = opts.max_rounds;
        cfg.stage1_only = opts.stage1_only;
        match pipeline::run(&inst.inner.h, &inst.inner.model, &cfg) {
            Ok(inner) => {
                let capped = inner.report.status == Status::CapExceeded;
                *out = Box::into_raw(Box::new(CfhmRun { inner }));
                if capped {
                    fail(CfhmStatus::CapExceeded, "resampling cap exceeded")
                } else {
                    CfhmStatus::Ok
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Borrows the stage-1 (`stage` 1) or stage-2 (`stage` 2) edge ids of a run.
/// The array lives as long as the run.
///
/// # Safety
/// `run` must come from this library; `edges` and `len` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cfhm_run_edges(run: *const CfhmRun, stage: u32, edges: *mut *const u32, len: *mut usize) -> CfhmStatus {
    guard(|| {
        let (Some(run), false, false) = (run.as_ref(), edges.is_null(), len.is_null()) else {
            return fail(CfhmStatus::NullArgument, "null argument");
        };
        let v = match stage {
            1 => &run.inner.matching.m1,
            2 => &run.inner.matching.m2,
            _ => return fail(CfhmStatus::InvalidInput, format!("stage must be 1 or 2, got {stage}")),
        };
        *edges = v.as_ptr();
        *len = v.len();
        CfhmStatus::Ok
    })
}

/// The run report as JSON; release with `cfhm_string_free`.
///
/// # Safety
/// `run` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn cfhm_run_report_json(run: *const CfhmRun) -> *mut c_char {
    let Some(run) = run.as_ref() else { return ptr::null_mut() };
    serde_json::to_string(&run.inner.report).map_or(ptr::null_mut(), to_c_string)
}

/// The matching in the interchange text format; release with `cfhm_string_free`.
///
/// # Safety
/// `run` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn cfhm_run_matching_text(run: *const CfhmRun) -> *mut c_char {
    let Some(run) = run.as_ref() else { return ptr::null_mut() };
    to_c_string(cfhm::io::write_matching(&run.inner.matching))
}

/// Verifies a run against its instance, including the decoded colouring or
/// covering. Returns `VerificationFailed` when a check fails; the report JSON
/// is stored in `report_json` when that pointer is non-null.
///
/// # Safety
/// `inst` and `run` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn cfhm_verify(inst: *const CfhmInstance, run: *const CfhmRun, report_json: *mut *mut c_char) -> CfhmStatus {
    guard(|| {
        let (Some(inst), Some(run)) = (inst.as_ref(), run.as_ref()) else { return fail(CfhmStatus::NullArgument, "null argument") };
        let report = match verify_instance(&inst.inner, &run.inner.matching, inst.inner.meta.d, 0.1) {
            Ok(r) => r,
            Err(e) => return from_error(&e),
        };
        if !report_json.is_null() {
            *report_json = serde_json::to_string(&report).map_or(ptr::null_mut(), to_c_string);
        }
        if report.passed() {
            CfhmStatus::Ok
        } else {
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            fail(CfhmStatus::VerificationFailed, format!("failed checks: {}", failed.join(", ")))
        }
    })
}

/// # Safety
/// `run` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cfhm_run_free(run: *mut CfhmRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn cfhm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
