use std::ffi::{CStr, CString};
use std::ptr;

use schober_forge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn last_error() -> String {
    let p = sf_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn triangle_counts_and_json_round_trip() {
    unsafe {
        let mut qp = ptr::null_mut();
        assert_eq!(sf_triangle_qp(c("A3").as_ptr(), false, &mut qp), SfStatus::Ok);
        let mut counts = SfQpCounts::default();
        assert_eq!(sf_qp_counts(qp, &mut counts), SfStatus::Ok);
        assert_eq!((counts.vertices, counts.arrows, counts.frozen_vertices, counts.frozen_arrows), (12, 24, 9, 6));

        let mut json = ptr::null_mut();
        assert_eq!(sf_qp_export_json(qp, &mut json), SfStatus::Ok);
        let bytes = CStr::from_ptr(json).to_bytes().to_vec();
        let mut back = ptr::null_mut();
        assert_eq!(sf_qp_import_json(bytes.as_ptr(), bytes.len(), &mut back), SfStatus::Ok);
        let mut iso = false;
        assert_eq!(sf_qp_isomorphic(qp, back, true, false, &mut iso), SfStatus::Ok);
        assert!(iso);
        assert_eq!(sf_ginzburg_check(back), SfStatus::Ok);

        let mut grid = ptr::null_mut();
        assert_eq!(sf_triangle_qp(c("A3").as_ptr(), true, &mut grid), SfStatus::Ok);
        assert_eq!(sf_qp_isomorphic(qp, grid, true, true, &mut iso), SfStatus::Ok);
        assert!(iso);

        let mut dot = ptr::null_mut();
        assert_eq!(sf_qp_export_dot(qp, &mut dot), SfStatus::Ok);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph"));

        sf_string_free(dot);
        sf_string_free(json);
        sf_qp_free(grid);
        sf_qp_free(back);
        sf_qp_free(qp);
    }
}

#[test]
fn surface_square() {
    unsafe {
        let mut qp = ptr::null_mut();
        assert_eq!(sf_surface_polygon(4, c("A3").as_ptr(), &mut qp), SfStatus::Ok);
        let mut counts = SfQpCounts::default();
        sf_qp_counts(qp, &mut counts);
        assert_eq!((counts.vertices, counts.frozen_vertices, counts.arrows), (21, 12, 44));
        sf_qp_free(qp);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut qp = ptr::null_mut();
        assert_eq!(sf_triangle_qp(c("Q4").as_ptr(), false, &mut qp), SfStatus::Parse);
        assert!(last_error().contains("Q4"));
        assert_eq!(sf_triangle_qp(c("D4").as_ptr(), true, &mut qp), SfStatus::Unsupported);
        assert_eq!(sf_triangle_qp(ptr::null(), false, &mut qp), SfStatus::NullArgument);
        assert_eq!(sf_triangle_qp(c("A2").as_ptr(), false, ptr::null_mut()), SfStatus::NullArgument);
        assert_eq!(sf_qp_counts(ptr::null(), ptr::null_mut()), SfStatus::NullArgument);
        let bad = b"{not json";
        assert_eq!(sf_qp_import_json(bad.as_ptr(), bad.len(), &mut qp), SfStatus::Parse);
        let mut k = 0usize;
        assert_eq!(sf_cluster_cofiber(3, 2, 2, &mut k), SfStatus::Domain);
        assert!(qp.is_null());
        sf_qp_free(ptr::null_mut());
        sf_string_free(ptr::null_mut());
    }
}

#[test]
fn cluster_arithmetic() {
    unsafe {
        let mut k = 0usize;
        assert_eq!(sf_cluster_cofiber(3, 1, 3, &mut k), SfStatus::Ok);
        assert_eq!(k, 2);
        assert_eq!(sf_cluster_fiber(4, 1, 2, &mut k), SfStatus::Ok);
        assert_eq!(k, 4);
        assert_eq!(sf_cluster_shift(c("E6").as_ptr(), 1, &mut k), SfStatus::Ok);
        assert_eq!(k, 5);
        assert_eq!(sf_cluster_shift(c("A3").as_ptr(), 7, &mut k), SfStatus::Domain);
    }
}

#[test]
fn verify_cluster_suite() {
    unsafe {
        let mut failures = usize::MAX;
        assert_eq!(sf_verify(c("cluster").as_ptr(), false, &mut failures), SfStatus::Ok);
        assert_eq!(failures, 0);
        assert_eq!(sf_verify(c("bogus").as_ptr(), false, &mut failures), SfStatus::Parse);
        assert!(!CStr::from_ptr(sf_version()).to_str().unwrap().is_empty());
    }
}
