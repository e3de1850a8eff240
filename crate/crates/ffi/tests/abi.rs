use std::ffi::{CStr, CString};
use std::ptr;

use lorentz3_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    l3_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(l3_last_error()).to_str().unwrap().to_string()
}

#[test]
fn classification_through_handles() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(l3_derivation_rosen(cstr("-1").as_ptr(), &mut d), L3Status::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(l3_invariant_b(d, &mut s), L3Status::Ok);
        assert_eq!(take(s), "2");
        assert_eq!(l3_classify(d, &mut s), L3Status::Ok);
        assert_eq!(take(s), "NonUnimodularHyperbolic");
        assert_eq!(l3_space_report_json(d, &mut s), L3Status::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report["compact_model"], true);

        let mut c = ptr::null_mut();
        assert_eq!(l3_derivation_canonical(cstr("2").as_ptr(), &mut c), L3Status::Ok);
        let mut iso = false;
        assert_eq!(l3_groups_isomorphic(d, c, &mut iso), L3Status::Ok);
        assert!(iso);
        l3_derivation_free(d);
        l3_derivation_free(c);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut d = ptr::null_mut();
        let bad = cstr("[[1,0,0],[0,1,0],[0,0,1]]");
        assert_eq!(l3_derivation_from_json(bad.as_ptr(), &mut d), L3Status::NotADerivation);
        assert!(d.is_null());
        assert!(last_error().contains("not a derivation"));

        assert_eq!(
            l3_derivation_from_json(cstr("[[0,0,0],[0,1,0],[0,0,-1]]").as_ptr(), &mut d),
            L3Status::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(l3_invariant_b(d, &mut s), L3Status::UnimodularInput);
        l3_derivation_free(d);

        assert_eq!(l3_derivation_canonical(cstr("1/0").as_ptr(), &mut d), L3Status::Parse);
        assert_eq!(l3_derivation_canonical(ptr::null(), &mut d), L3Status::NullPointer);
        assert_eq!(l3_classify(ptr::null(), &mut s), L3Status::NullPointer);

        let mut chart = ptr::null_mut();
        assert_eq!(l3_chart_power_law(2.0, &mut chart), L3Status::Ok);
        let mut g = [0.0; 9];
        assert_eq!(
            l3_chart_metric(chart, [-1.0, 0.0, 0.0].as_ptr(), g.as_mut_ptr()),
            L3Status::DomainError
        );
        l3_chart_free(chart);
        l3_string_free(ptr::null_mut());
        l3_derivation_free(ptr::null_mut());
    }
}

#[test]
fn geometry_through_handles() {
    unsafe {
        let mut chart = ptr::null_mut();
        assert_eq!(l3_chart_power_law(2.0, &mut chart), L3Status::Ok);
        let p = [1.0, 0.0, 0.5];
        let mut r = [0.0; 81];
        assert_eq!(l3_chart_riemann(chart, p.as_ptr(), r.as_mut_ptr()), L3Status::Ok);
        // R_uxux = H = b/u²
        assert_eq!(r[2 * 9 + 2], 2.0);
        let mut gamma = [0.0; 27];
        assert_eq!(
            l3_chart_christoffels(chart, p.as_ptr(), gamma.as_mut_ptr()),
            L3Status::Ok
        );
        assert_eq!(gamma[2 * 9], -1.0);
        let mut k = 0.0;
        let status = l3_sectional_curvature(
            chart,
            [1.0, 0.0, 0.0].as_ptr(),
            [1.0, 1.0, 0.0].as_ptr(),
            [0.0, 0.0, 1.0].as_ptr(),
            &mut k,
        );
        assert_eq!(status, L3Status::Ok);
        assert!((k + 1.0).abs() < 1e-12);

        let state = [1.0, 0.0, 0.0, -1.0, 0.0, 0.0];
        let mut end = [0.0; 6];
        let mut reached = 0.0;
        let mut term = L3Termination::CompletedSpan;
        let status = l3_integrate_geodesic(chart, state.as_ptr(), 10.0, end.as_mut_ptr(), &mut reached, &mut term);
        assert_eq!(status, L3Status::Ok);
        assert_eq!(term, L3Termination::HitDomainBoundary);
        assert!((reached - 1.0).abs() < 1e-6);
        l3_chart_free(chart);

        let mut d = ptr::null_mut();
        assert_eq!(l3_derivation_canonical(cstr("-1/2").as_ptr(), &mut d), L3Status::Ok);
        assert_eq!(l3_chart_for(d, &mut chart), L3Status::Ok);
        assert_eq!(
            l3_chart_riemann(chart, [0.5, 0.0, 0.0].as_ptr(), r.as_mut_ptr()),
            L3Status::Ok
        );
        assert_eq!(r[2 * 9 + 2], -2.0);
        l3_chart_free(chart);
        l3_derivation_free(d);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(l3_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
