use std::ffi::{CStr, CString};
use std::ptr;

use blowup_ffi::*;

fn class(json: &str) -> *mut BlowupClass {
    let s = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { blowup_class_from_json(s.as_ptr(), &mut out) }, BlowupStatus::Ok);
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { blowup_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(blowup_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn vdim_of_fourteen_points() {
    let c = class(r#"{"n":4,"r":14,"d":8,"m":[4,4,4,4,4,4,4,4,4,4,4,4,4,4]}"#);
    let mut v = 0i64;
    assert_eq!(unsafe { blowup_vdim(c, &mut v) }, BlowupStatus::Ok);
    assert_eq!(v, 4);
    unsafe { blowup_class_free(c) };
}

#[test]
fn parse_errors_are_reported() {
    let s = CString::new("{not json").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { blowup_class_from_json(s.as_ptr(), &mut out) }, BlowupStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { blowup_class_from_json(ptr::null(), &mut out) }, BlowupStatus::NullPointer);
}

#[test]
fn pairing_and_roundtrip() {
    let a = class(r#"{"n":2,"r":10,"d":10,"m":[3,3,3,3,3,3,3,3,3,3]}"#);
    let k = class(r#"{"n":2,"r":10,"d":3,"m":[1,1,1,1,1,1,1,1,1,1]}"#);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { blowup_pair(a, k, &mut s) }, BlowupStatus::Ok);
    assert_eq!(take_string(s), "0");
    assert_eq!(unsafe { blowup_pair(a, a, &mut s) }, BlowupStatus::Ok);
    assert_eq!(take_string(s), "10");
    assert_eq!(unsafe { blowup_class_to_json(k, &mut s) }, BlowupStatus::Ok);
    let back = class(&take_string(s));
    assert_eq!(unsafe { blowup_pair(back, a, &mut s) }, BlowupStatus::Ok);
    assert_eq!(take_string(s), "0");
    let other = class(r#"{"n":2,"r":3,"d":1,"m":[0,0,0]}"#);
    assert_eq!(unsafe { blowup_pair(a, other, &mut s) }, BlowupStatus::Context);
    unsafe {
        blowup_class_free(a);
        blowup_class_free(k);
        blowup_class_free(back);
        blowup_class_free(other);
    }
}

#[test]
fn reduction_and_minus_one() {
    let c = class(r#"{"n":2,"r":4,"d":2,"m":[1,1,1,1]}"#);
    let mut out = ptr::null_mut();
    let mut st = -1;
    assert_eq!(unsafe { blowup_reduce(c, &mut out, &mut st) }, BlowupStatus::Ok);
    assert_eq!(st, 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { blowup_class_to_json(out, &mut s) }, BlowupStatus::Ok);
    assert!(take_string(s).contains("\"d\":1"));
    let line = class(r#"{"n":2,"r":3,"d":1,"m":[1,1,0]}"#);
    let mut yes = false;
    assert_eq!(unsafe { blowup_is_minus_one(line, &mut yes) }, BlowupStatus::Ok);
    assert!(yes);
    unsafe {
        blowup_class_free(c);
        blowup_class_free(out);
        blowup_class_free(line);
    }
}

#[test]
fn nef_classify_and_h0() {
    let q = class(r#"{"n":4,"r":14,"d":2,"m":[1,1,1,1,1,1,1,1,1,1,1,1,1,1]}"#);
    let mut nef = false;
    assert_eq!(unsafe { blowup_nef(q, 5, &mut nef) }, BlowupStatus::Ok);
    assert!(nef);
    let seeds = [1u64, 2, 3];
    let mut h = -1;
    assert_eq!(unsafe { blowup_h0(q, 65537, seeds.as_ptr(), seeds.len(), &mut h) }, BlowupStatus::Ok);
    assert_eq!(h, 1);
    assert_eq!(unsafe { blowup_h0(q, 65536, seeds.as_ptr(), seeds.len(), &mut h) }, BlowupStatus::Oracle);

    let h2 = class(r#"{"n":2,"r":2,"d":1,"m":[0,0]}"#);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { blowup_classify(h2, 65537, 5, &mut s) }, BlowupStatus::Ok);
    assert!(take_string(s).contains("AsymptoticallyNonSpecial"));
    let e = class(r#"{"n":2,"r":2,"d":0,"m":[-1,0]}"#);
    assert_eq!(unsafe { blowup_classify(e, 65537, 5, &mut s) }, BlowupStatus::Precondition);
    unsafe {
        blowup_class_free(q);
        blowup_class_free(h2);
        blowup_class_free(e);
    }
}
