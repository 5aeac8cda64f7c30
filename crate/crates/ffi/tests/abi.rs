use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use rsl_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(rsl_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn b_values() {
    let mut v = -1i64;
    let r = [2usize];
    assert_eq!(unsafe { rsl_b(4, r.as_ptr(), 1, &mut v) }, RslStatus::Ok);
    assert_eq!(v, 1);
    let r = [1usize, 2];
    assert_eq!(unsafe { rsl_b_prime(6, r.as_ptr(), 2, &mut v) }, RslStatus::Ok);
    assert_eq!(v, 1);
    assert_eq!(unsafe { rsl_b(6, ptr::null(), 0, &mut v) }, RslStatus::Ok);
    assert_eq!(v, 1);
}

#[test]
fn errors_set_status_and_message() {
    let mut v = 0i64;
    let r = [9usize];
    assert_eq!(unsafe { rsl_b(5, r.as_ptr(), 1, &mut v) }, RslStatus::InvalidRankSet);
    assert!(last_error().contains("rank set"));
    assert_eq!(unsafe { rsl_b(5, ptr::null(), 2, &mut v) }, RslStatus::NullPointer);
    assert_eq!(unsafe { rsl_b(5, ptr::null(), 0, ptr::null_mut()) }, RslStatus::NullPointer);
}

#[test]
fn table_handle() {
    let parts = [4usize, 1];
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { rsl_table_new(parts.as_ptr(), 2, &mut t) }, RslStatus::Ok);
    assert_eq!(unsafe { rsl_table_n(t) }, 5);
    let mut f = 0u64;
    let mut h = 0i64;
    let r = [1usize, 2, 3];
    assert_eq!(unsafe { rsl_table_f(t, r.as_ptr(), 3, &mut f) }, RslStatus::Ok);
    assert_eq!(unsafe { rsl_table_h(t, ptr::null(), 0, &mut h) }, RslStatus::Ok);
    assert_eq!(h, 1);
    assert!(f > 1);
    unsafe { rsl_table_free(t) };

    let bad = [1usize, 2];
    assert_eq!(unsafe { rsl_table_new(bad.as_ptr(), 2, &mut t) }, RslStatus::InvalidShape);
    assert_eq!(unsafe { rsl_table_n(ptr::null()) }, 0);
    unsafe { rsl_table_free(ptr::null_mut()) };
}

#[test]
fn descents_of_descending_run() {
    let gaps = [2usize, 4, 6, 8, 7, 5, 3, 1, 9];
    let mut buf = [0usize; 9];
    let mut count = 0;
    assert_eq!(unsafe { rsl_descent_set(gaps.as_ptr(), 9, buf.as_mut_ptr(), 9, &mut count) }, RslStatus::Ok);
    assert_eq!(&buf[..count], &[1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(unsafe { rsl_descent_set(gaps.as_ptr(), 9, buf.as_mut_ptr(), 3, &mut count) }, RslStatus::BufferTooSmall);
    assert_eq!(count, 7);
    let dup = [1usize, 1];
    assert_eq!(unsafe { rsl_descent_set(dup.as_ptr(), 2, buf.as_mut_ptr(), 9, &mut count) }, RslStatus::InvalidInsertions);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(rsl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/rsl.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["rsl_b(", "rsl_b_prime(", "rsl_table_new(", "rsl_table_free(", "rsl_descent_set(", "RSL_STATUS_OK"] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
