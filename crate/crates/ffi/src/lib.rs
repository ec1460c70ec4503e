//! C ABI for the core library: opaque category handles, status codes, and
//! JSON strings for structured results.
//!
//! Every function is panic-safe (panics are caught and reported as
//! `GHEXT_ERR_INTERNAL`), returns a [`GhextStatus`], and writes results
//! through out-pointers.  Strings returned through `char**` are owned by
//! the library and must be released with [`ghext_string_free`].

use ghext_core::abelian::{FiniteAbelianGroup, GroupElem};
use ghext_core::asolve::{solve_tensor, SolveConfig};
use ghext_core::category::{verify_axioms, CategoryData};
use ghext_core::equiv::classify;
use ghext_core::extdata::{search_extension_data, ExtensionParams};
use ghext_core::jsonio::load_category;
use ghext_core::{ah4, klein, presets};
use std::ffi::{c_char, c_double, c_int, c_uint, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhextStatus {
    GhextOk = 0,
    GhextErrNull = 1,
    GhextErrUtf8 = 2,
    GhextErrIo = 3,
    GhextErrParse = 4,
    GhextErrInvalid = 5,
    GhextErrNoSolution = 6,
    GhextErrInternal = 7,
}

use GhextStatus::*;

/// Opaque handle to a category datum (group, sign/root tables, optional
/// tensor).
pub struct GhextCategory {
    inner: CategoryData,
}

fn guard(f: impl FnOnce() -> GhextStatus) -> GhextStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => GhextErrInternal,
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, GhextStatus> {
    if ptr.is_null() {
        return Err(GhextErrNull);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| GhextErrUtf8)
}

fn give_string(s: String, out: *mut *mut c_char) -> GhextStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            GhextOk
        }
        Err(_) => GhextErrInternal,
    }
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn ghext_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string produced by this library.
///
/// # Safety
/// `ptr` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ghext_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        unsafe {
            drop(CString::from_raw(ptr));
        }
    }
}

/// Loads a category from a JSON file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghext_category_from_json_file(
    path: *const c_char,
    out: *mut *mut GhextCategory,
) -> GhextStatus {
    guard(|| {
        if out.is_null() {
            return GhextErrNull;
        }
        let path = match unsafe { cstr(path) } {
            Ok(s) => s,
            Err(e) => return e,
        };
        match load_category(Path::new(path)) {
            Ok(inner) => {
                let handle = Box::new(GhextCategory { inner });
                unsafe { *out = Box::into_raw(handle) };
                GhextOk
            }
            Err(ghext_core::jsonio::IoError::Io(_)) => GhextErrIo,
            Err(_) => GhextErrParse,
        }
    })
}

/// Builds a category from a named ε preset (`z2z2-paper`,
/// `z2n-nontrivial`, `ah4`, `trivial`) for the given group spec; η is
/// trivial and no tensor is attached.
///
/// # Safety
/// `preset` and `group_spec` must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ghext_category_preset(
    preset: *const c_char,
    group_spec: *const c_char,
    out: *mut *mut GhextCategory,
) -> GhextStatus {
    guard(|| {
        if out.is_null() {
            return GhextErrNull;
        }
        let (preset, spec) = match (unsafe { cstr(preset) }, unsafe { cstr(group_spec) }) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let group = match FiniteAbelianGroup::parse(spec) {
            Ok(g) => g,
            Err(_) => return GhextErrParse,
        };
        match presets::builtin_category(preset, &group) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(GhextCategory { inner })) };
                GhextOk
            }
            Err(_) => GhextErrInvalid,
        }
    })
}

/// Releases a category handle.
///
/// # Safety
/// `ptr` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ghext_category_free(ptr: *mut GhextCategory) {
    if !ptr.is_null() {
        unsafe {
            drop(Box::from_raw(ptr));
        }
    }
}

/// Runs the axiom verifier; `max_residual` receives the worst floating
/// residual and `pass` is 1/0.  Fails with `GHEXT_ERR_INVALID` when the
/// handle has no tensor.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ghext_verify_axioms(
    cat: *const GhextCategory,
    tol: c_double,
    max_residual: *mut c_double,
    pass: *mut c_int,
) -> GhextStatus {
    guard(|| {
        if cat.is_null() || max_residual.is_null() || pass.is_null() {
            return GhextErrNull;
        }
        let cat = unsafe { &*cat };
        match verify_axioms(&cat.inner, tol) {
            Ok(report) => {
                unsafe {
                    *max_residual = report.max_float_residual();
                    *pass = report.pass as c_int;
                }
                GhextOk
            }
            Err(_) => GhextErrInvalid,
        }
    })
}

/// Solves the tensor system for the handle's `(group, ε, η)` and stores
/// the best solution inside the handle; `residual` receives its maximal
/// absolute residual.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ghext_solve_tensor(
    cat: *mut GhextCategory,
    restarts: c_uint,
    seed: u64,
    tol: c_double,
    residual: *mut c_double,
) -> GhextStatus {
    guard(|| {
        if cat.is_null() || residual.is_null() {
            return GhextErrNull;
        }
        let cat = unsafe { &mut *cat };
        let cfg = SolveConfig {
            restarts: restarts as usize,
            convergence_tol: tol,
            seed,
            ..SolveConfig::default()
        };
        let out = match solve_tensor(&cat.inner.group, &cat.inner.eps, &cat.inner.eta, &cfg) {
            Ok(o) => o,
            Err(_) => return GhextErrInvalid,
        };
        match out.solutions.first() {
            Some(best) => {
                unsafe { *residual = best.residual };
                cat.inner.tensor = Some(best.tensor.clone());
                GhextOk
            }
            None => GhextErrNoSolution,
        }
    })
}

fn parse_elem(group: &FiniteAbelianGroup, csv: &str) -> Result<usize, GhextStatus> {
    let residues: Result<Vec<u32>, _> = csv.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let residues = residues.map_err(|_| GhextErrParse)?;
    group.index_of(&GroupElem(residues)).map_err(|_| GhextErrParse)
}

/// Enumerates extension data for the twist `(p, z)` (comma-separated
/// residues) and writes a JSON document with the solutions and their
/// equivalence-class count to `json_out`.
///
/// # Safety
/// All pointers must be valid; free the string with `ghext_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ghext_search_extensions_json(
    cat: *const GhextCategory,
    p: *const c_char,
    z: *const c_char,
    json_out: *mut *mut c_char,
) -> GhextStatus {
    guard(|| {
        if cat.is_null() || json_out.is_null() {
            return GhextErrNull;
        }
        let cat = unsafe { &*cat };
        let (p, z) = match (unsafe { cstr(p) }, unsafe { cstr(z) }) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let group = &cat.inner.group;
        let (pi, zi) = match (parse_elem(group, p), parse_elem(group, z)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let params = match ExtensionParams::new(group, pi, zi) {
            Ok(p) => p,
            Err(_) => return GhextErrInvalid,
        };
        let result = search_extension_data(&cat.inner, params, 1e-8);
        let classes = match classify(&result.solutions, &cat.inner.eps, group, None) {
            Ok(c) => c.class_count(),
            Err(_) => return GhextErrInternal,
        };
        let doc = serde_json::json!({
            "count": result.solutions.len(),
            "classes": classes,
            "tensor_filtered": result.tensor_filtered,
            "solutions": result.solutions,
        });
        give_string(doc.to_string(), json_out)
    })
}

/// Klein-four census: writes the admissible triple count and the total
/// number of extensions.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ghext_klein_census(
    triples: *mut c_uint,
    total: *mut c_uint,
) -> GhextStatus {
    guard(|| {
        if triples.is_null() || total.is_null() {
            return GhextErrNull;
        }
        match klein::klein_census() {
            Ok(census) => {
                unsafe {
                    *triples = census.admissible_triples as c_uint;
                    *total = census.total as c_uint;
                }
                GhextOk
            }
            Err(_) => GhextErrInvalid,
        }
    })
}

/// Rotation-graded census: writes the total count of quasi-trivial
/// extensions.
///
/// # Safety
/// `total` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ghext_a4_census(total: *mut c_uint) -> GhextStatus {
    guard(|| {
        if total.is_null() {
            return GhextErrNull;
        }
        match klein::a4_census() {
            Ok(census) => {
                unsafe { *total = census.total as c_uint };
                GhextOk
            }
            Err(_) => GhextErrInvalid,
        }
    })
}

/// Degenerate-scenario check: `l11_pass` reports the compatibility
/// identity, `data_pass` whether both data sets satisfy the exact system.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ghext_ah4_check(
    l11_pass: *mut c_int,
    data_pass: *mut c_int,
) -> GhextStatus {
    guard(|| {
        if l11_pass.is_null() || data_pass.is_null() {
            return GhextErrNull;
        }
        let s = ah4::build_scenario();
        let (r10, r01) = ah4::check_data_sets(&s);
        unsafe {
            *l11_pass = ah4::check_l11(&s) as c_int;
            *data_pass = (r10.pass_exact() && r01.pass_exact()) as c_int;
        }
        GhextOk
    })
}
