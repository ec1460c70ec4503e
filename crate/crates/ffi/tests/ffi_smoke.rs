//! Exercises the C ABI through the exported symbols.

use ghext_ffi::*;
use std::ffi::{c_char, c_double, c_int, c_uint, CStr, CString};
use std::ptr;

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(ghext_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn censuses_through_the_abi() {
    let mut triples: c_uint = 0;
    let mut total: c_uint = 0;
    let status = unsafe { ghext_klein_census(&mut triples, &mut total) };
    assert_eq!(status, GhextStatus::GhextOk);
    assert_eq!((triples, total), (28, 74));

    let mut a4: c_uint = 0;
    assert_eq!(unsafe { ghext_a4_census(&mut a4) }, GhextStatus::GhextOk);
    assert_eq!(a4, 15);

    let (mut l11, mut data) = (0 as c_int, 0 as c_int);
    assert_eq!(
        unsafe { ghext_ah4_check(&mut l11, &mut data) },
        GhextStatus::GhextOk
    );
    assert_eq!((l11, data), (1, 1));
}

#[test]
fn null_pointers_are_rejected() {
    assert_eq!(
        unsafe { ghext_klein_census(ptr::null_mut(), ptr::null_mut()) },
        GhextStatus::GhextErrNull
    );
    let mut out: *mut GhextCategory = ptr::null_mut();
    assert_eq!(
        unsafe { ghext_category_from_json_file(ptr::null(), &mut out) },
        GhextStatus::GhextErrNull
    );
}

#[test]
fn preset_solve_search_roundtrip() {
    let preset = CString::new("z2n-nontrivial").unwrap();
    let spec = CString::new("Z2").unwrap();
    let mut cat: *mut GhextCategory = ptr::null_mut();
    let status = unsafe { ghext_category_preset(preset.as_ptr(), spec.as_ptr(), &mut cat) };
    assert_eq!(status, GhextStatus::GhextOk);
    assert!(!cat.is_null());

    // no tensor yet: verify must report invalid
    let mut res: c_double = 0.0;
    let mut pass: c_int = 0;
    assert_eq!(
        unsafe { ghext_verify_axioms(cat, 1e-8, &mut res, &mut pass) },
        GhextStatus::GhextErrInvalid
    );

    let mut residual: c_double = f64::NAN;
    let status = unsafe { ghext_solve_tensor(cat, 32, 7, 1e-9, &mut residual) };
    assert_eq!(status, GhextStatus::GhextOk);
    assert!(residual <= 1e-9);

    assert_eq!(
        unsafe { ghext_verify_axioms(cat, 1e-8, &mut res, &mut pass) },
        GhextStatus::GhextOk
    );
    assert_eq!(pass, 1);

    let p = CString::new("1").unwrap();
    let z = CString::new("0").unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status =
        unsafe { ghext_search_extensions_json(cat, p.as_ptr(), z.as_ptr(), &mut json) };
    assert_eq!(status, GhextStatus::GhextOk);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { ghext_string_free(json) };
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["classes"], 2);

    unsafe { ghext_category_free(cat) };
}

#[test]
fn bad_preset_is_invalid() {
    let preset = CString::new("nope").unwrap();
    let spec = CString::new("Z2").unwrap();
    let mut cat: *mut GhextCategory = ptr::null_mut();
    assert_eq!(
        unsafe { ghext_category_preset(preset.as_ptr(), spec.as_ptr(), &mut cat) },
        GhextStatus::GhextErrInvalid
    );
}
