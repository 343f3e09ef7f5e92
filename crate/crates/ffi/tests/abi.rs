use std::ffi::{c_char, CStr, CString};
use std::ptr;

use poisson_ffi::*;

const SO3: &str = include_str!("../../core/corpus/so3.json");
const ABELIAN2: &str = include_str!("../../core/corpus/abelian2.json");
const H3: &str = include_str!("../../core/corpus/heisenberg3.json");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(poisson_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { poisson_string_free(p) };
    s
}

fn algebra(json: &str) -> *mut PoissonLieAlgebra {
    let mut g = ptr::null_mut();
    let status = unsafe { poisson_lie_algebra_from_json(c(json).as_ptr(), &mut g) };
    assert_eq!(status, PoissonStatus::Ok, "{}", last_error());
    g
}

#[test]
fn lie_algebra_queries() {
    let g = algebra(SO3);
    let mut dim = 0;
    let mut semisimple = false;
    unsafe {
        assert_eq!(poisson_lie_algebra_dim(g, &mut dim), PoissonStatus::Ok);
        assert_eq!(
            poisson_lie_algebra_is_semisimple(g, &mut semisimple),
            PoissonStatus::Ok
        );
    }
    assert_eq!(dim, 3);
    assert!(semisimple);
    let dims: Vec<usize> = (0..=3)
        .map(|k| {
            let mut d = 99;
            assert_eq!(
                unsafe { poisson_lie_algebra_cohomology_dim(g, k, &mut d) },
                PoissonStatus::Ok
            );
            d
        })
        .collect();
    assert_eq!(dims, [1, 0, 0, 1]);
    let mut d = 99;
    assert_eq!(
        unsafe { poisson_lie_algebra_cohomology_dim(g, 4, &mut d) },
        PoissonStatus::Ok
    );
    assert_eq!(d, 0, "cochains above the dimension vanish");
    unsafe { poisson_lie_algebra_free(g) };

    let h3 = algebra(H3);
    let mut d = 0;
    unsafe {
        poisson_lie_algebra_cohomology_dim(h3, 2, &mut d);
        poisson_lie_algebra_free(h3);
    }
    assert_eq!(d, 2);
}

#[test]
fn json_round_trip() {
    let g = algebra(SO3);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { poisson_lie_algebra_to_json(g, &mut s) },
        PoissonStatus::Ok
    );
    let text = take_string(s);
    let g2 = algebra(&text);
    let mut s2 = ptr::null_mut();
    unsafe { poisson_lie_algebra_to_json(g2, &mut s2) };
    assert_eq!(take_string(s2), text);
    unsafe {
        poisson_lie_algebra_free(g);
        poisson_lie_algebra_free(g2);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let status = unsafe { poisson_lie_algebra_from_json(c("{\"dim\": ").as_ptr(), &mut g) };
    assert_eq!(status, PoissonStatus::ParseError);
    assert!(last_error().contains("line 1"));
    assert!(g.is_null());

    let bad = r#"{"dim":3,"basis":["a","b","c"],"brackets":[
        {"i":0,"j":1,"coeffs":{"1":"1"}},{"i":1,"j":2,"coeffs":{"0":"1"}}]}"#;
    let status = unsafe { poisson_lie_algebra_from_json(c(bad).as_ptr(), &mut g) };
    assert_eq!(status, PoissonStatus::Precondition);
    assert!(last_error().contains("Jacobi"));

    let not_poisson = r#"{"n":3,"terms":[
        {"indices":[0,1],"monomial":[0,1,0],"coeff":"1"},
        {"indices":[1,2],"monomial":[0,0,0],"coeff":"1"}]}"#;
    let mut p = ptr::null_mut();
    let status = unsafe { poisson_structure_from_json(c(not_poisson).as_ptr(), &mut p) };
    assert_eq!(status, PoissonStatus::Precondition);

    let status = unsafe { poisson_lie_algebra_from_json(ptr::null(), &mut g) };
    assert_eq!(status, PoissonStatus::InvalidArgument);
    let mut dim = 0;
    assert_eq!(
        unsafe { poisson_lie_algebra_dim(ptr::null(), &mut dim) },
        PoissonStatus::InvalidArgument
    );

    // a successful call clears the message
    let g = algebra(SO3);
    assert_eq!(last_error(), "");
    unsafe { poisson_lie_algebra_free(g) };
}

#[test]
fn classify_through_the_abi() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { poisson_structure_from_json(c(ABELIAN2).as_ptr(), &mut p) },
        PoissonStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { poisson_structure_classify_json(p, ptr::null(), &mut out) },
        PoissonStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["verdict"], "UnstableWitness");
    assert_eq!(v["h2_dim"], 1);
    assert_eq!(v["witness"]["empty_for_all_nonzero_t"], true);
    unsafe { poisson_structure_free(p) };

    let g = algebra(SO3);
    let mut p = ptr::null_mut();
    unsafe { poisson_structure_from_lie_algebra(g, &mut p) };
    let mut out = ptr::null_mut();
    unsafe { poisson_structure_classify_json(p, c("0,0,0").as_ptr(), &mut out) };
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["verdict"], "Stable");

    let status = unsafe { poisson_structure_classify_json(p, c("1,0,0").as_ptr(), &mut out) };
    assert_eq!(status, PoissonStatus::Precondition);
    assert!(out.is_null());
    assert!(last_error().contains("fixed point"));
    let status = unsafe { poisson_structure_classify_json(p, c("1,0").as_ptr(), &mut out) };
    assert_eq!(status, PoissonStatus::InvalidArgument);
    let status = unsafe { poisson_structure_classify_json(p, c("1,x,0").as_ptr(), &mut out) };
    assert_eq!(status, PoissonStatus::ParseError);

    let mut iso = ptr::null_mut();
    assert_eq!(
        unsafe { poisson_structure_isotropy(p, ptr::null(), &mut iso) },
        PoissonStatus::Ok
    );
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        poisson_lie_algebra_to_json(iso, &mut a);
        poisson_lie_algebra_to_json(g, &mut b);
    }
    assert_eq!(take_string(a), take_string(b));
    unsafe {
        poisson_lie_algebra_free(iso);
        poisson_lie_algebra_free(g);
        poisson_structure_free(p);
    }
}

#[test]
fn structure_to_json_and_frees_accept_null() {
    let mut p = ptr::null_mut();
    unsafe { poisson_structure_from_json(c(SO3).as_ptr(), &mut p) };
    let mut n = 0;
    unsafe { poisson_structure_dim(p, &mut n) };
    assert_eq!(n, 3);
    let mut s = ptr::null_mut();
    unsafe { poisson_structure_to_json(p, &mut s) };
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    unsafe {
        poisson_structure_free(p);
        poisson_structure_free(ptr::null_mut());
        poisson_lie_algebra_free(ptr::null_mut());
        poisson_string_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(poisson_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
