//! C ABI over the palletpack solver.
//!
//! Instances and solutions are opaque handles created and released by this
//! library. Every fallible call returns a [`PpStatus`]; on failure a message
//! describing the error is available from [`pp_last_error`] on the same
//! thread until the next failing call.
//!
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`pp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use palletpack::io::{check_solution, parse_instance, Instance, SolutionFile};
use palletpack::svg::render_svg;
use palletpack::{solve, BoundMode, Placement};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInstance = 4,
    InvalidSolution = 5,
    OutOfRange = 6,
    InvalidArgument = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpBoundMode {
    Exact = 0,
    Lp = 1,
}

/// One loaded unit. `unit` is its position in the instance's unit list.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PpPlacement {
    pub unit: usize,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub w: u32,
    pub d: u32,
    pub h: u32,
    pub rotated: bool,
}

/// Parsed instance plus the parameters the next solve will use.
pub struct PpInstance {
    inner: Instance,
}

pub struct PpSolution {
    instance: Instance,
    placements: Vec<Placement>,
    file: SolutionFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: PpStatus, message: impl Into<String>) -> PpStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> PpStatus) -> PpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(PpStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, PpStatus> {
    if text.is_null() {
        return Err(fail(PpStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(PpStatus::InvalidUtf8, "string argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> PpStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            PpStatus::Ok
        }
        Err(_) => fail(PpStatus::InvalidArgument, "output contains a NUL byte"),
    }
}

/// Message for the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_from_json(json: *const c_char, out: *mut *mut PpInstance) -> PpStatus {
    guard(|| {
        if out.is_null() {
            return fail(PpStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PpInstance { inner }));
                PpStatus::Ok
            }
            Err(palletpack::InstanceError::Syntax(e)) => fail(PpStatus::ParseError, e),
            Err(e) => fail(PpStatus::InvalidInstance, e.to_string()),
        }
    })
}

/// # Safety
/// `instance` must come from [`pp_instance_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_free(instance: *mut PpInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of units in the instance, 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_unit_count(instance: *const PpInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.units.len())
}

/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_set_time_limit_ms(instance: *mut PpInstance, ms: u64) -> PpStatus {
    match instance.as_mut() {
        Some(i) => {
            i.inner.params.time_limit_ms = ms;
            PpStatus::Ok
        }
        None => fail(PpStatus::NullPointer, "instance is null"),
    }
}

/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_set_max_branches(instance: *mut PpInstance, branches: usize) -> PpStatus {
    match instance.as_mut() {
        Some(_) if branches == 0 => fail(PpStatus::InvalidArgument, "max_branches must be at least 1"),
        Some(i) => {
            i.inner.params.max_branches = branches;
            PpStatus::Ok
        }
        None => fail(PpStatus::NullPointer, "instance is null"),
    }
}

/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_instance_set_bound_mode(instance: *mut PpInstance, mode: PpBoundMode) -> PpStatus {
    match instance.as_mut() {
        Some(i) => {
            i.inner.params.bound_mode = match mode {
                PpBoundMode::Exact => BoundMode::ExactKnapsack,
                PpBoundMode::Lp => BoundMode::LpRelaxation,
            };
            PpStatus::Ok
        }
        None => fail(PpStatus::NullPointer, "instance is null"),
    }
}

/// Runs the solver with the instance's current parameters.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_solve(instance: *const PpInstance, out: *mut *mut PpSolution) -> PpStatus {
    guard(|| {
        if out.is_null() {
            return fail(PpStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(instance) = instance.as_ref() else {
            return fail(PpStatus::NullPointer, "instance is null");
        };
        let inst = &instance.inner;
        match solve(&inst.units, &inst.pallet, &inst.params) {
            Ok(solution) => {
                let file = SolutionFile::new(inst, &inst.params, &solution);
                *out = Box::into_raw(Box::new(PpSolution {
                    instance: inst.clone(),
                    placements: solution.placements,
                    file,
                }));
                PpStatus::Ok
            }
            Err(e) => fail(PpStatus::InvalidInstance, e.to_string()),
        }
    })
}

/// # Safety
/// `solution` must come from [`pp_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_free(solution: *mut PpSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_placement_count(solution: *const PpSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.placements.len())
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_placed_volume(solution: *const PpSolution) -> u64 {
    solution.as_ref().map_or(0, |s| s.file.placed_volume)
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_utilization(solution: *const PpSolution) -> f64 {
    solution.as_ref().map_or(0.0, |s| s.file.utilization)
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_timed_out(solution: *const PpSolution) -> bool {
    solution.as_ref().is_some_and(|s| s.file.stats.timed_out)
}

/// Copies placement `index` (in loading order) into `out`.
///
/// # Safety
/// `solution` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_placement(
    solution: *const PpSolution,
    index: usize,
    out: *mut PpPlacement,
) -> PpStatus {
    let (Some(solution), false) = (solution.as_ref(), out.is_null()) else {
        return fail(PpStatus::NullPointer, "solution or out is null");
    };
    let Some(p) = solution.placements.get(index) else {
        return fail(
            PpStatus::OutOfRange,
            format!("placement {index} of {}", solution.placements.len()),
        );
    };
    *out = PpPlacement {
        unit: p.unit,
        x: p.position.x,
        y: p.position.y,
        z: p.position.z,
        w: p.dims.w,
        d: p.dims.d,
        h: p.dims.h,
        rotated: p.rotated,
    };
    PpStatus::Ok
}

/// Solution document, as written by the command-line tool.
///
/// # Safety
/// `solution` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_to_json(solution: *const PpSolution, out: *mut *mut c_char) -> PpStatus {
    guard(|| match (solution.as_ref(), out.is_null()) {
        (Some(s), false) => write_string(out, s.file.to_json()),
        _ => fail(PpStatus::NullPointer, "solution or out is null"),
    })
}

/// SVG drawing of the solution.
///
/// # Safety
/// `solution` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_to_svg(solution: *const PpSolution, out: *mut *mut c_char) -> PpStatus {
    guard(|| match (solution.as_ref(), out.is_null()) {
        (Some(s), false) => write_string(out, render_svg(&s.instance.pallet, &s.placements)),
        _ => fail(PpStatus::NullPointer, "solution or out is null"),
    })
}

/// Checks a solution document against `instance`. Returns
/// `PP_STATUS_INVALID_SOLUTION` with every problem in the error message when
/// a constraint does not hold.
///
/// # Safety
/// `instance` must be a live handle and `solution_json` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pp_validate_json(instance: *const PpInstance, solution_json: *const c_char) -> PpStatus {
    guard(|| {
        let Some(instance) = instance.as_ref() else {
            return fail(PpStatus::NullPointer, "instance is null");
        };
        let text = match read_str(solution_json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let file = match SolutionFile::parse(text) {
            Ok(f) => f,
            Err(e) => return fail(PpStatus::ParseError, e.to_string()),
        };
        match check_solution(&instance.inner, &file) {
            Ok(()) => PpStatus::Ok,
            Err(issues) => {
                let text: Vec<String> = issues.iter().map(ToString::to_string).collect();
                fail(PpStatus::InvalidSolution, text.join("; "))
            }
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `text` must be null or a string from one of the `_to_*` functions.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
