use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use quasi_double_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = qd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn verify_and_double_round_trip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(qd_algebra_load(cstr("fun_z2_omega").as_ptr(), &mut a), QdStatus::Ok);
        assert_eq!(qd_algebra_dim(a), 2);
        assert!(!qd_algebra_has_r(a));
        let mut r = ptr::null_mut();
        assert_eq!(qd_verify(a, 1e-9, &mut r), QdStatus::Ok);
        assert!(qd_report_passed(r));
        assert!(qd_report_len(r) > 10);
        let s = qd_report_jsonl(r);
        let text = CStr::from_ptr(s).to_str().unwrap().to_string();
        qd_string_free(s);
        assert!(text.lines().any(|l| l.contains("\"qhopf.pentagon\"")));
        qd_report_free(r);

        let mut d = ptr::null_mut();
        assert_eq!(qd_double_build(a, 1e-9, &mut d), QdStatus::Ok);
        assert_eq!(qd_double_dim(d), 4);
        let mut r = ptr::null_mut();
        assert_eq!(qd_double_verify(d, 1e-9, &mut r), QdStatus::Ok);
        assert!(qd_report_passed(r));
        assert!(qd_report_max_residual(r) <= 1e-9);
        qd_report_free(r);
        qd_double_free(d);
        qd_algebra_free(a);
    }
}

#[test]
fn twisted_double_reports() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(qd_twisted_double(cstr("z2").as_ptr(), cstr("standard:1").as_ptr(), 1e-9, &mut r), QdStatus::Ok);
        let s = qd_report_jsonl(r);
        assert!(CStr::from_ptr(s).to_str().unwrap().contains("(x⊗1)² coefficient at δ_x = −1"));
        qd_string_free(s);
        qd_report_free(r);
        // the standard family needs a cyclic group
        let mut r = ptr::null_mut();
        assert_eq!(qd_twisted_double(cstr("s3").as_ptr(), cstr("standard:1").as_ptr(), 1e-9, &mut r), QdStatus::Precondition);
        assert!(r.is_null());
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(qd_algebra_load(cstr("no_such_algebra").as_ptr(), &mut a), QdStatus::ParseError);
        assert!(a.is_null());
        assert!(last_error().contains("unknown algebra"));
        assert_eq!(qd_algebra_load(ptr::null(), &mut a), QdStatus::InvalidArgument);
        assert!(last_error().contains("null"));
        assert_eq!(qd_algebra_load(cstr("cz2").as_ptr(), ptr::null_mut()), QdStatus::InvalidArgument);
        assert_eq!(qd_algebra_load(cstr("cz2").as_ptr(), &mut a), QdStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(qd_verify(a, -1.0, &mut r), QdStatus::InvalidArgument);
        assert_eq!(qd_verify(ptr::null(), 1e-9, &mut r), QdStatus::InvalidArgument);
        qd_algebra_free(a);
        assert_eq!(qd_twisted_double(cstr("z2").as_ptr(), cstr("bogus").as_ptr(), 1e-9, &mut r), QdStatus::ParseError);
        // null handles are tolerated by the accessors and the free functions
        assert_eq!(qd_algebra_dim(ptr::null()), 0);
        assert!(!qd_report_passed(ptr::null()));
        assert!(qd_report_jsonl(ptr::null()).is_null());
        qd_report_free(ptr::null_mut());
        qd_string_free(ptr::null_mut());
    }
}

#[test]
fn non_cocycle_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    // ω(x,x,x) = i on Z₂ is not a 3-cocycle
    let mut v = vec![r#"{"re":1.0,"im":0.0}"#; 8];
    v[7] = r#"{"re":0.0,"im":1.0}"#;
    std::fs::write(&p, format!(r#"{{"name":"w_i","values":[{}]}}"#, v.join(","))).unwrap();
    unsafe {
        let mut r = ptr::null_mut();
        let s = qd_twisted_double(cstr("z2").as_ptr(), cstr(p.to_str().unwrap()).as_ptr(), 1e-9, &mut r);
        assert_ne!(s, QdStatus::Ok);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/quasi_double.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["qd_algebra_load", "qd_double_build", "qd_twisted_double", "qd_report_jsonl", "qd_last_error", "QD_STATUS_CHECK_FAILED"] {
        assert!(text.contains(f), "{f} missing from the header");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else { return };
    if !cc.status.success() {
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"quasi_double.h\"\n\
         int main(void) {\n\
           QdAlgebra *a = 0; QdReport *r = 0;\n\
           if (qd_algebra_load(\"cz2\", &a) != QD_STATUS_OK) return 1;\n\
           QdStatus s = qd_verify(a, 1e-9, &r);\n\
           char *j = qd_report_jsonl(r);\n\
           qd_string_free(j); qd_report_free(r); qd_algebra_free(a);\n\
           return s == QD_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
