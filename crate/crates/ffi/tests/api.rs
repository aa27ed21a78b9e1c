use std::ffi::{c_char, CString};
use std::ptr;

use opposition_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let n = unsafe { opp_last_error(buf.as_mut_ptr().cast::<c_char>(), buf.len()) };
    String::from_utf8_lossy(&buf[..n.min(255)]).into_owned()
}

#[test]
fn diagram_queries() {
    let mut d = 0u32;
    let labels = [1u32, 6];
    unsafe {
        assert_eq!(opp_displacement(c("E7").as_ptr(), labels.as_ptr(), 2, &mut d), OppStatus::Ok);
    }
    assert_eq!(d, 50);
    let mut count = 0usize;
    unsafe {
        assert_eq!(opp_count_admissible(c("E6").as_ptr(), c("op2").as_ptr(), &mut count), OppStatus::Ok);
    }
    assert_eq!(count, 2);
    let mut ok = false;
    unsafe {
        assert_eq!(opp_is_admissible(c("E7").as_ptr(), labels.as_ptr(), 2, c("id").as_ptr(), &mut ok), OppStatus::Ok);
    }
    assert!(ok);
    let two = [2u32];
    unsafe {
        assert_eq!(opp_is_admissible(c("E7").as_ptr(), two.as_ptr(), 1, c("").as_ptr(), &mut ok), OppStatus::Ok);
    }
    assert!(!ok);
}

#[test]
fn errors_are_reported() {
    let mut d = 0u32;
    unsafe {
        assert_eq!(opp_displacement(c("Q3").as_ptr(), ptr::null(), 0, &mut d), OppStatus::Parse);
        assert!(!last_error().is_empty());
        assert_eq!(opp_displacement(ptr::null(), ptr::null(), 0, &mut d), OppStatus::NullPointer);
        assert_eq!(opp_displacement(c("A2").as_ptr(), ptr::null(), 0, ptr::null_mut()), OppStatus::NullPointer);
        let mut g = ptr::null_mut();
        assert_eq!(opp_geometry_build(c("B3@3").as_ptr(), &mut g), OppStatus::InvalidInput);
        assert!(g.is_null());
    }
}

#[test]
fn polarity_analysis() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(opp_geometry_build(c("A3@2").as_ptr(), &mut g), OppStatus::Ok);
        let (mut rank, mut vertices, mut chambers) = (0, 0, 0);
        assert_eq!(opp_geometry_counts(g, &mut rank, &mut vertices, &mut chambers), OppStatus::Ok);
        assert_eq!((rank, vertices, chambers), (3, 65, 315));

        let mut a = ptr::null_mut();
        assert_eq!(opp_automorphism_symplectic_polarity(g, &mut a), OppStatus::Ok);
        let mut r = OppAnalysis::default();
        assert_eq!(opp_analyze(g, a, &mut r), OppStatus::Ok);
        assert_eq!(r.opposition_type, 0b010);
        assert!(r.capped && r.duality && r.admissible && r.domestic);
        assert_eq!((r.measured_displacement, r.formula_displacement, r.order), (4, 4, 2));
        assert_eq!(r.invariant_violations, 0);

        let mut dom = false;
        assert_eq!(opp_is_j_domestic(g, a, 0b001, &mut dom), OppStatus::Ok);
        assert!(dom);
        assert_eq!(opp_is_j_domestic(g, a, 0b010, &mut dom), OppStatus::Ok);
        assert!(!dom);

        let mut needed = 0usize;
        assert_eq!(opp_analysis_record(g, a, ptr::null_mut(), 0, &mut needed), OppStatus::BufferTooSmall);
        let mut buf = vec![0u8; needed];
        assert_eq!(opp_analysis_record(g, a, buf.as_mut_ptr().cast(), needed, &mut needed), OppStatus::Ok);
        let record = String::from_utf8(buf[..needed - 1].to_vec()).unwrap();
        assert!(record.contains("type=2 capped=true"), "{record}");

        opp_automorphism_free(a);
        opp_geometry_free(g);
    }
}

#[test]
fn random_and_parsed_automorphisms() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(opp_geometry_build(c("A2@2").as_ptr(), &mut g), OppStatus::Ok);
        let mut a = ptr::null_mut();
        assert_eq!(opp_automorphism_random(g, 5, OppKind::Duality, &mut a), OppStatus::Ok);
        let mut r = OppAnalysis::default();
        assert_eq!(opp_analyze(g, a, &mut r), OppStatus::Ok);
        assert!(r.duality);
        assert_eq!(r.invariant_violations, 0);
        opp_automorphism_free(a);

        let file = c("geometry projective n=3 q=2\nkind collineation\nmatrix\n0 1 0\n0 0 1\n1 0 0\n");
        assert_eq!(opp_automorphism_parse(file.as_ptr(), &mut a), OppStatus::Ok);
        assert_eq!(opp_analyze(g, a, &mut r), OppStatus::Ok);
        assert_eq!(r.order, 3);
        assert!(!r.duality);

        let mut other = ptr::null_mut();
        assert_eq!(opp_geometry_build(c("A2@3").as_ptr(), &mut other), OppStatus::Ok);
        assert_eq!(opp_analyze(other, a, &mut r), OppStatus::InvalidInput);

        opp_automorphism_free(a);
        opp_geometry_free(g);
        opp_geometry_free(other);
        opp_geometry_free(ptr::null_mut());
    }
}
