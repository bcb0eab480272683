use std::ffi::{CStr, CString};
use std::ptr;

use regmaps_ffi::*;

fn catalog(name: &str) -> *mut RmMap {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { rm_map_from_catalog(name.as_ptr(), &mut m) }, RmStatus::Ok);
    m
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rm_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn evaluate_and_dims() {
    let m = catalog("oplus:1");
    let (mut d, mut c) = (0, 0);
    unsafe {
        assert_eq!(rm_map_dims(m, &mut d, &mut c), RmStatus::Ok);
        assert_eq!((d, c), (4, 2));
        let x = [0.0, 1.0, 0.0, 1.0];
        let mut y = [0.0; 2];
        assert_eq!(rm_map_eval_f64(m, x.as_ptr(), 4, y.as_mut_ptr(), 2), RmStatus::Ok);
        assert!((y[0] + 0.6).abs() < 1e-12 && (y[1] - 0.8).abs() < 1e-12);
        assert_eq!(rm_map_eval_f64(m, x.as_ptr(), 4, y.as_mut_ptr(), 1), RmStatus::BufferTooSmall);
        assert_eq!(rm_map_eval_f64(m, x.as_ptr(), 3, y.as_mut_ptr(), 2), RmStatus::InvalidArgument);
        rm_map_free(m);
    }
}

#[test]
fn json_round_trip_and_compose() {
    let z2 = catalog("zpow:2");
    let z3 = catalog("zpow:3");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(rm_map_to_json(z3, &mut s), RmStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(rm_map_from_json(s, &mut back), RmStatus::Ok);
        rm_string_free(s);

        let mut fg = ptr::null_mut();
        assert_eq!(rm_map_compose(z2, back, &mut fg), RmStatus::Ok);
        let mut w = 0;
        assert_eq!(rm_winding(fg, &mut w), RmStatus::Ok);
        assert_eq!(w, 6);
        for m in [z2, z3, back, fg] {
            rm_map_free(m);
        }
    }
}

#[test]
fn degree_and_numbers() {
    let phi = catalog("phi:3");
    unsafe {
        let mut d = RmDegree::default();
        assert_eq!(rm_degree_mc(phi, 20_000, 0, &mut d), RmStatus::Ok);
        assert_eq!(d.rounded, 2);
        assert!(d.conclusive);
        rm_map_free(phi);

        let mut a = 0;
        assert_eq!(rm_radon_hurwitz(9, &mut a), RmStatus::Ok);
        assert_eq!(a, 16);
        let mut holds = false;
        assert_eq!(rm_check_codim_pair(1, 7, &mut holds), RmStatus::Ok);
        assert!(holds);
        assert_eq!(rm_radon_hurwitz(0, &mut a), RmStatus::InvalidArgument);
    }
}

#[test]
fn verification_status_and_report() {
    unsafe {
        let mut report = ptr::null_mut();
        let ok = CString::new("zpow:-2").unwrap();
        assert_eq!(rm_verify_target(ok.as_ptr(), 5, 200, 0, &mut report), RmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        rm_string_free(report);

        let bad = CString::new("jmap-rotation").unwrap();
        assert_eq!(rm_verify_target(bad.as_ptr(), 5, 200, 0, ptr::null_mut()), RmStatus::VerificationFailed);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        let name = CString::new("nope:1").unwrap();
        assert_eq!(rm_map_from_catalog(name.as_ptr(), &mut m), RmStatus::UnknownTarget);
        assert!(last_error().contains("nope:1"));
        assert!(m.is_null());
        assert_eq!(rm_map_from_catalog(ptr::null(), &mut m), RmStatus::NullPointer);
        let junk = CString::new("{").unwrap();
        assert_eq!(rm_map_from_json(junk.as_ptr(), &mut m), RmStatus::Parse);
        let mut w = 0;
        assert_eq!(rm_winding(ptr::null(), &mut w), RmStatus::NullPointer);
        let s2 = catalog("antipodal:2");
        assert_eq!(rm_winding(s2, &mut w), RmStatus::InvalidArgument);
        rm_map_free(s2);
        rm_map_free(ptr::null_mut());
        rm_string_free(ptr::null_mut());
    }
}
