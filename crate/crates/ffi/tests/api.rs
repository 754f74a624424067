use std::ffi::{CStr, CString};
use std::ptr;

use pattern_mobius_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = pm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    pm_string_free(p);
    s
}

#[test]
fn mobius_values() {
    let cache = pm_cache_new();
    let mut v = 0i64;
    unsafe {
        assert_eq!(pm_principal_mobius(cache, c("1243").as_ptr(), &mut v), PmStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(pm_principal_mobius(cache, c("2413").as_ptr(), &mut v), PmStatus::Ok);
        assert_eq!(v, -3);
        assert_eq!(pm_mobius(cache, c("2413").as_ptr(), c("2413").as_ptr(), &mut v), PmStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(pm_mobius(cache, c("321").as_ptr(), c("123").as_ptr(), &mut v), PmStatus::Ok);
        assert_eq!(v, 0);
        pm_cache_free(cache);
    }
}

#[test]
fn error_codes() {
    let cache = pm_cache_new();
    let mut v = 0i64;
    unsafe {
        assert_eq!(pm_principal_mobius(cache, c("1223").as_ptr(), &mut v), PmStatus::Parse);
        assert!(last_error().contains('2'));
        assert_eq!(pm_principal_mobius(cache, c("e").as_ptr(), &mut v), PmStatus::Domain);
        assert_eq!(pm_principal_mobius(ptr::null(), c("12").as_ptr(), &mut v), PmStatus::NullPointer);
        assert_eq!(pm_principal_mobius(cache, ptr::null(), &mut v), PmStatus::NullPointer);
        assert_eq!(pm_principal_mobius(cache, c("12").as_ptr(), ptr::null_mut()), PmStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(pm_principal_mobius(cache, bad.as_ptr().cast(), &mut v), PmStatus::InvalidUtf8);
        let mut out = ptr::null_mut();
        assert_eq!(pm_inflate(c("1[e]").as_ptr(), &mut out), PmStatus::Domain);
        assert_eq!(pm_inflate(c("1[2").as_ptr(), &mut out), PmStatus::Parse);
        assert!(out.is_null());
        let mut reg = ptr::null_mut();
        assert_eq!(pm_registry_build(cache, 2, &mut reg), PmStatus::Domain);
        pm_cache_free(cache);
    }
}

#[test]
fn strings_round_trip() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(pm_inflate(c("3624715[1,12,1,1,21,1,1]").as_ptr(), &mut out), PmStatus::Ok);
        assert_eq!(take_string(out), "367249815");
        assert_eq!(pm_decompose(c("367249815").as_ptr(), &mut out), PmStatus::Ok);
        assert_eq!(take_string(out), "3624715 [ 1, 12, 1, 1, 21, 1, 1 ]");
        pm_string_free(ptr::null_mut());
    }
}

#[test]
fn classification() {
    let cache = pm_cache_new();
    unsafe {
        let mut reg = ptr::null_mut();
        assert_eq!(pm_registry_build(cache, 5, &mut reg), PmStatus::Ok);
        let mut len = 0usize;
        assert_eq!(pm_registry_max_length(reg, &mut len), PmStatus::Ok);
        assert_eq!(len, 5);
        let mut class = PmClass::NonZero;
        let mut text = ptr::null_mut();
        assert_eq!(pm_classify(reg, cache, c("12453").as_ptr(), &mut class, &mut text), PmStatus::Ok);
        assert_eq!(class, PmClass::New);
        assert!(take_string(text).starts_with("New"));
        assert_eq!(pm_classify(reg, cache, c("1243").as_ptr(), &mut class, ptr::null_mut()), PmStatus::Ok);
        assert_eq!(class, PmClass::OpposingAdjacencies);
        assert_eq!(pm_classify(reg, cache, c("132").as_ptr(), &mut class, ptr::null_mut()), PmStatus::Ok);
        assert_eq!(class, PmClass::NonZero);
        assert_eq!(
            pm_classify(reg, cache, c("1234567").as_ptr(), &mut class, ptr::null_mut()),
            PmStatus::Domain
        );
        pm_registry_free(reg);
        pm_cache_free(cache);
    }
}

#[test]
fn censuses_and_bound() {
    let cache = pm_cache_new();
    unsafe {
        let (mut zero, mut total) = (0u64, 0u64);
        assert_eq!(pm_z_count(cache, 6, &mut zero, &mut total), PmStatus::Ok);
        assert_eq!((zero, total), (386, 720));
        assert_eq!(pm_z_count(cache, 0, &mut zero, &mut total), PmStatus::Domain);
        let mut b = 0.0;
        assert_eq!(pm_lower_bound(100, &mut b), PmStatus::Ok);
        assert!((b - 0.399_576_400_894).abs() < 1e-11);
        assert_eq!(pm_lower_bound(1, &mut b), PmStatus::Domain);
        pm_cache_free(cache);
    }
}

#[test]
fn cache_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = c(dir.path().join("cache.txt").to_str().unwrap());
    let cache = pm_cache_new();
    unsafe {
        let mut v = 0i64;
        pm_principal_mobius(cache, c("25314").as_ptr(), &mut v);
        assert_eq!(pm_cache_save(cache, path.as_ptr()), PmStatus::Ok);
        let mut loaded = ptr::null_mut();
        assert_eq!(pm_cache_load(path.as_ptr(), &mut loaded), PmStatus::Ok);
        let mut w = 0i64;
        assert_eq!(pm_principal_mobius(loaded, c("25314").as_ptr(), &mut w), PmStatus::Ok);
        assert_eq!(v, w);
        pm_cache_free(loaded);
        pm_cache_free(cache);

        std::fs::write(dir.path().join("bad.txt"), "garbage\n").unwrap();
        let bad = c(dir.path().join("bad.txt").to_str().unwrap());
        let mut h = ptr::null_mut();
        assert_eq!(pm_cache_load(bad.as_ptr(), &mut h), PmStatus::CacheCorrupt);
        assert!(h.is_null());
        let missing = c(dir.path().join("missing.txt").to_str().unwrap());
        assert_eq!(pm_cache_load(missing.as_ptr(), &mut h), PmStatus::Io);
    }
}
