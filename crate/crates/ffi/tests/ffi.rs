use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use iotacx_ffi::*;

fn text(c: *const IcxComplex) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { icx_complex_to_text(c, &mut s) }, IcxStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { icx_string_free(s) };
    out
}

fn last_error() -> String {
    let p = icx_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { icx_string_free(s) };
    out
}

#[test]
fn parse_print_round_trip() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { icx_torus_cfk(2, 3, &mut t) }, IcxStatus::Ok);
    assert!(unsafe { icx_complex_is_knot(t) });
    assert_eq!(unsafe { icx_complex_len(t) }, 3);
    let doc = text(t);
    let c = CString::new(doc.clone()).unwrap();
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { icx_complex_parse(c.as_ptr(), &mut u) }, IcxStatus::Ok);
    assert_eq!(text(u), doc);
    unsafe {
        icx_complex_free(t);
        icx_complex_free(u);
    }
}

#[test]
fn operations() {
    let mut t = ptr::null_mut();
    let mut d = ptr::null_mut();
    let mut td = ptr::null_mut();
    let mut unit = ptr::null_mut();
    let one = CString::new("ring F2[U,V]\ngen 1 0 0\niota 1 1 0 0\n").unwrap();
    let mut ok = false;
    unsafe {
        assert_eq!(icx_torus_cfk(2, 3, &mut t), IcxStatus::Ok);
        assert_eq!(icx_dual(t, &mut d), IcxStatus::Ok);
        assert_eq!(icx_tensor(t, d, &mut td), IcxStatus::Ok);
        assert_eq!(icx_complex_parse(one.as_ptr(), &mut unit), IcxStatus::Ok);
        assert_eq!(icx_equivalent(td, unit, false, &mut ok), IcxStatus::Ok);
        assert!(ok);
        assert_eq!(icx_equivalent(t, unit, false, &mut ok), IcxStatus::Ok);
        assert!(!ok);
        let pair =
            CString::new("ring F2[U]\ngen 1 0\ngen a 0\ngen b -1\nd a b 0\niota 1 1 0\niota a a 0\niota b b 0\n")
                .unwrap();
        let mut x = ptr::null_mut();
        assert_eq!(icx_complex_parse(pair.as_ptr(), &mut x), IcxStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(icx_reduce(x, &mut r), IcxStatus::Ok);
        assert_eq!(icx_complex_len(r), 1);
        icx_complex_free(x);
        let mut a = ptr::null_mut();
        assert_eq!(icx_a0(t, &mut a), IcxStatus::Ok);
        assert!(!icx_complex_is_knot(a));
        assert_eq!(icx_verify(a, false, &mut ok), IcxStatus::Ok);
        assert!(ok);
        for h in [t, d, td, unit, r, a] {
            icx_complex_free(h);
        }
    }
}

#[test]
fn parameters() {
    let mut s = ptr::null_mut();
    let mut ok = false;
    let p = CString::new("+,-1,+,-2").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(icx_standard(p.as_ptr(), &mut c), IcxStatus::Ok);
        assert_eq!(icx_standard_rep(c, 2, 2, &mut s), IcxStatus::Ok);
        assert_eq!(take(s), "+,-1,+,-2");
        assert_eq!(icx_standard_rep(c, 1, 1, &mut s), IcxStatus::NotFound);
        icx_complex_free(c);
        let terms = CString::new("+3,-2").unwrap();
        assert_eq!(icx_sum_params(terms.as_ptr(), &mut s), IcxStatus::Ok);
        assert_eq!(take(s), "+,-1,+,-3,-,1,-,2");
        assert_eq!(icx_sf_member(p.as_ptr(), &mut ok), IcxStatus::Ok);
        assert!(!ok);
        let mut sf = true;
        assert_eq!(icx_yn(5, 3, 5, &mut s, &mut sf), IcxStatus::Ok);
        assert_eq!(take(s), "+,-1,+,-4");
        assert!(!sf);
    }
}

#[test]
fn errors() {
    let mut c = ptr::null_mut();
    let bad = CString::new("ring F2[U]\ngen a 0\nd a zz 0\n").unwrap();
    unsafe {
        assert_eq!(icx_complex_parse(bad.as_ptr(), &mut c), IcxStatus::Parse);
        assert!(last_error().contains("zz"));
        assert_eq!(icx_complex_parse(ptr::null(), &mut c), IcxStatus::NullPointer);
        assert_eq!(icx_torus_cfk(2, 4, &mut c), IcxStatus::InvalidInput);
        let one = CString::new("+1").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(icx_sum_params(one.as_ptr(), &mut s), IcxStatus::OutOfScope);
        assert_eq!(icx_yn(4, 3, 3, &mut s, ptr::null_mut()), IcxStatus::NullPointer);
        assert_eq!(icx_complex_len(ptr::null()), 0);
        icx_complex_free(ptr::null_mut());
        icx_string_free(ptr::null_mut());
    }
}

/// Compiles `smoke.c` against the generated header and the static library,
/// when a C compiler and the library are available.
#[test]
fn c_smoke() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libiotacx_ffi.a");
    if !lib.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = std::env::temp_dir().join(format!("iotacx-smoke-{}", std::process::id()));
    let status = std::process::Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to compile");
    let run = std::process::Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "+,-1,+,-2\n");
}
