//! Calls the exported functions the way a C caller would.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gtalg_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gt_string_free(s);
    out
}

#[test]
fn genus_of_projective_plane() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(gt_manifold_catalog(c("CP2").as_ptr(), &mut m), GtStatus::Ok);
        assert_eq!(gt_manifold_dimension(m), 2);
        let mut s = ptr::null_mut();
        assert_eq!(gt_genus_compute(m, c("A-hat").as_ptr(), &mut s), GtStatus::Ok);
        assert_eq!(take(s), "-1/8");
        assert_eq!(gt_genus_compute(m, c("Todd").as_ptr(), &mut s), GtStatus::Ok);
        assert_eq!(take(s), "1");
        gt_manifold_free(m);
    }
}

#[test]
fn deformed_genus_of_projective_line() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(gt_manifold_catalog(c("CP1").as_ptr(), &mut m), GtStatus::Ok);
        let mut s = ptr::null_mut();
        let status = gt_genus_deform(m, c("A-hat").as_ptr(), c("1:1/3").as_ptr(), GtConvention::FromZero, &mut s);
        assert_eq!(status, GtStatus::Ok);
        assert_eq!(take(s), "2/3");
        let status = gt_genus_deform(m, c("A-hat").as_ptr(), c("1:1/3").as_ptr(), GtConvention::FromOne, &mut s);
        assert_ne!(status, GtStatus::Ok);
        assert!(!CStr::from_ptr(gt_last_error_message()).to_bytes().is_empty());
        gt_manifold_free(m);
    }
}

#[test]
fn double_zeta_value() {
    let (mut v, mut e) = (0.0, 0.0);
    unsafe {
        assert_eq!(gt_mzv_eval(c("(2,3)").as_ptr(), 1e-10, &mut v, &mut e), GtStatus::Ok);
    }
    assert!(e <= 1e-10);
    assert!((v - 0.228_810_397_6).abs() < 1e-9, "{v}");
    unsafe {
        assert_eq!(gt_mzv_eval(c("(2,1)").as_ptr(), 1e-10, &mut v, &mut e), GtStatus::Divergent);
    }
}

#[test]
fn series_dimensions_and_buffer_size() {
    let mut dims = [0u64; 10];
    unsafe {
        let status = gt_series_dims(c("sOmega").as_ptr(), 9, GtConvention::FromZero, dims.as_mut_ptr(), dims.len());
        assert_eq!(status, GtStatus::Ok);
        let status = gt_series_dims(c("sOmega").as_ptr(), 10, GtConvention::FromZero, dims.as_mut_ptr(), dims.len());
        assert_eq!(status, GtStatus::BufferTooSmall);
    }
    assert_eq!(dims[0], 1);
    assert_eq!(&dims[6..], &[1, 0, 0, 1]);
}

#[test]
fn identity_and_basis_change() {
    let (mut exact, mut first) = (false, 99u32);
    unsafe {
        assert_eq!(gt_identity_check(c("d-classes").as_ptr(), 10, &mut exact, &mut first), GtStatus::Ok);
        assert!(exact);
        assert_eq!(first, 0);
        let mut s = ptr::null_mut();
        let status = gt_symm_convert(c("P").as_ptr(), c("E").as_ptr(), c("N[2]").as_ptr(), &mut s);
        assert_eq!(status, GtStatus::Ok);
        let text = take(s);
        assert!(text.contains("c[1]") && text.contains("c[2]"), "{text}");
    }
}

#[test]
fn tor_table_as_csv() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gt_tor_csv(c("exterior:3,5").as_ptr(), 12, &mut s), GtStatus::Ok);
        let csv = take(s);
        assert!(csv.lines().count() > 1, "{csv}");
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gt_genus_compute(ptr::null(), c("Todd").as_ptr(), &mut s), GtStatus::NullPointer);
        assert_eq!(gt_polynomial_parse(c("1 +").as_ptr(), &mut ptr::null_mut()), GtStatus::Parse);
    }
}
