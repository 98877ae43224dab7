use std::ffi::{CStr, CString};
use std::ptr;

use hamcoh_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    hamcoh_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = hamcoh_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn new_complex(spec: &str, degree: usize, grade: i64) -> *mut HamcohComplex {
    let mut cx = ptr::null_mut();
    let status = hamcoh_complex_new_default(cstr(spec).as_ptr(), cstr("trivial").as_ptr(), degree, grade, &mut cx);
    assert_eq!(status, HamcohStatus::Ok);
    cx
}

#[test]
fn cell_dims_of_sh4() {
    unsafe {
        let cx = new_complex("SH(0|4)", 4, 2);
        let mut dims = HamcohCellDims::default();
        assert_eq!(hamcoh_cell_dims(cx, 3, 0, &mut dims), HamcohStatus::Ok);
        assert_eq!(dims.dim_h, 1);
        assert_eq!(dims.dim_h, dims.dim_c - dims.rank_z - dims.rank_b);
        assert_eq!(hamcoh_cell_dims(cx, 2, 1, &mut dims), HamcohStatus::Ok);
        assert_eq!(dims.dim_h, 0);
        hamcoh_complex_free(cx);

        // infinite algebras only hold the elements the window needs
        let cx = new_complex("H(2|0)", 3, -2);
        assert_eq!(hamcoh_cell_dims(cx, 2, -2, &mut dims), HamcohStatus::Ok);
        assert_eq!(dims.dim_h, 1);
        assert_eq!(hamcoh_cell_dims(cx, 2, 4, &mut dims), HamcohStatus::Input);
        assert!(last_error().starts_with("error[input]"));
        hamcoh_complex_free(cx);
    }
}

#[test]
fn table_json_round_trips() {
    unsafe {
        let cx = new_complex("HHat(2|0)", 9, 0);
        let mut out = ptr::null_mut();
        assert_eq!(hamcoh_table_json(cx, 0, 8, 0, 0, &mut out), HamcohStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        let dims: Vec<u64> = v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["dim_H"].as_u64().unwrap())
            .collect();
        assert_eq!(dims, [1, 1, 0, 0, 0, 0, 0, 1, 1]);
        hamcoh_complex_free(cx);
    }
}

#[test]
fn cocycles_cup_and_compare() {
    unsafe {
        let cx = new_complex("SH(0|4)", 5, 2);
        let rep = |k, g| {
            let mut out = ptr::null_mut();
            assert_eq!(hamcoh_cocycles_json(cx, k, g, &mut out), HamcohStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            cstr(&v[0].to_string())
        };
        let (a, b, c, f) = (rep(2, -2), rep(2, 0), rep(2, 2), rep(3, 0));

        let mut out = ptr::null_mut();
        assert_eq!(hamcoh_cup_json(a.as_ptr(), c.as_ptr(), &mut out), HamcohStatus::Ok);
        let ac: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(hamcoh_cup_json(b.as_ptr(), b.as_ptr(), &mut out), HamcohStatus::Ok);
        let bb: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(bb["is_coboundary"], false);
        let (ac, bb) = (cstr(&ac["product"].to_string()), cstr(&bb["product"].to_string()));
        assert_eq!(
            hamcoh_compare_json(ac.as_ptr(), bb.as_ptr(), &mut out),
            HamcohStatus::Ok
        );
        let cmp: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(cmp["equal"], true);
        assert_eq!(cmp["lambda"], "1/4");

        assert_eq!(hamcoh_cup_json(f.as_ptr(), f.as_ptr(), &mut out), HamcohStatus::Ok);
        let ff: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(ff["is_coboundary"], true);
        hamcoh_complex_free(cx);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut cx = ptr::null_mut();
        let status = hamcoh_complex_new(cstr("SH(2|4)").as_ptr(), cstr("trivial").as_ptr(), 3, 0, 0, &mut cx);
        assert_eq!(status, HamcohStatus::Parse);
        assert!(cx.is_null());
        assert!(last_error().starts_with("error[parse]"));

        let status = hamcoh_complex_new(ptr::null(), cstr("trivial").as_ptr(), 3, 0, 0, &mut cx);
        assert_eq!(status, HamcohStatus::NullArgument);

        let mut out = ptr::null_mut();
        let bad = cstr("{");
        assert_eq!(
            hamcoh_cup_json(bad.as_ptr(), bad.as_ptr(), &mut out),
            HamcohStatus::Input
        );

        let cx = new_complex("Po(0|4)", 6, 0);
        let mut capped = ptr::null_mut();
        let status = hamcoh_complex_new(
            cstr("Po(0|4)").as_ptr(),
            cstr("trivial").as_ptr(),
            6,
            0,
            10,
            &mut capped,
        );
        assert_eq!(status, HamcohStatus::Ok);
        let mut dims = HamcohCellDims::default();
        assert_eq!(hamcoh_cell_dims(capped, 5, 0, &mut dims), HamcohStatus::ResourceCap);
        hamcoh_complex_free(capped);
        hamcoh_complex_free(cx);
        hamcoh_complex_free(ptr::null_mut());
        hamcoh_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(hamcoh_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
