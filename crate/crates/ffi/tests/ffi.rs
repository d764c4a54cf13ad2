use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nmbin_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { nmbin_string_free(p) };
    s
}

fn last_error() -> String {
    let p = nmbin_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sequence_handle_round_trip() {
    let mut seq = ptr::null_mut();
    assert_eq!(nmbin_sequence_new(2, 3, &mut seq), NmbinStatus::Ok);
    let mut v = 0u64;
    assert_eq!(nmbin_sequence_term_u64(seq, 23, &mut v), NmbinStatus::Ok);
    assert_eq!(v, 1872);
    let mut s = ptr::null_mut();
    assert_eq!(nmbin_sequence_term(seq, 24, &mut s), NmbinStatus::Ok);
    assert_eq!(take_string(s), "2556");
    assert_eq!(
        nmbin_sequence_term_u64(seq, 2000, &mut v),
        NmbinStatus::Domain
    );
    assert!(last_error().contains("64 bits"));
    unsafe { nmbin_sequence_free(seq) };
}

#[test]
fn decompose_with_buffer_protocol() {
    let mut seq = ptr::null_mut();
    assert_eq!(nmbin_sequence_new(2, 3, &mut seq), NmbinStatus::Ok);
    let z = CString::new("2018").unwrap();
    let mut len = 0usize;
    let status = unsafe { nmbin_decompose(seq, z.as_ptr(), ptr::null_mut(), 0, &mut len) };
    assert_eq!(status, NmbinStatus::BufferTooSmall);
    assert_eq!(len, 3);
    let mut buf = vec![0u64; len];
    let status = unsafe { nmbin_decompose(seq, z.as_ptr(), buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(status, NmbinStatus::Ok);
    assert_eq!(buf, [23, 15, 1]);
    let zero = CString::new("0").unwrap();
    assert_eq!(
        unsafe { nmbin_decompose(seq, zero.as_ptr(), ptr::null_mut(), 0, &mut len) },
        NmbinStatus::Ok
    );
    assert_eq!(len, 0);
    let bad = CString::new("12a").unwrap();
    assert_eq!(
        unsafe { nmbin_decompose(seq, bad.as_ptr(), buf.as_mut_ptr(), 3, &mut len) },
        NmbinStatus::Parse
    );
    unsafe { nmbin_sequence_free(seq) };
}

#[test]
fn error_codes() {
    let mut seq = ptr::null_mut();
    assert_eq!(
        nmbin_sequence_new(0, 1, &mut seq),
        NmbinStatus::InvalidParams
    );
    assert!(last_error().contains("invalid parameters"));
    assert_eq!(
        nmbin_sequence_new(1, 1, ptr::null_mut()),
        NmbinStatus::NullPointer
    );
    assert_eq!(
        nmbin_sequence_term_u64(ptr::null_mut(), 0, &mut 0),
        NmbinStatus::NullPointer
    );
    let (mut a, mut b) = (0.0, 0.0);
    assert_eq!(
        nmbin_exact_stats(1, 2, 0, &mut a, &mut b),
        NmbinStatus::Domain
    );
    unsafe {
        nmbin_sequence_free(ptr::null_mut());
        nmbin_string_free(ptr::null_mut());
    }
}

#[test]
fn count_table() {
    let mut t = ptr::null_mut();
    assert_eq!(nmbin_count_table_new(2, 3, 3, &mut t), NmbinStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(nmbin_count_table_get(t, 1, 1, &mut s), NmbinStatus::Ok);
    assert_eq!(take_string(s), "5");
    assert_eq!(nmbin_count_table_get(t, 1, 9, &mut s), NmbinStatus::Ok);
    assert_eq!(take_string(s), "0");
    assert_eq!(nmbin_count_table_get(t, 4, 0, &mut s), NmbinStatus::Domain);
    unsafe { nmbin_count_table_free(t) };
}

#[test]
fn statistics() {
    let (mut beta, mut c, mut cp) = (0.0, 0.0, 0.0);
    assert_eq!(
        nmbin_constants(2, 3, &mut beta, &mut c, &mut cp),
        NmbinStatus::Ok
    );
    assert!((c * 10000.0 - 7113.248654).abs() < 1e-6);
    assert!((cp * 10000.0 - 1443.375673).abs() < 1e-6);
    let mut s = ptr::null_mut();
    assert_eq!(
        nmbin_constants_json(1, 2, 10000, 20, &mut s),
        NmbinStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["predicted_mean"], "6464.466094");
    let (mut mean, mut var) = (0.0, 0.0);
    assert_eq!(
        nmbin_exact_stats(2, 3, 1, &mut mean, &mut var),
        NmbinStatus::Ok
    );
    assert!((mean - 5.0 / 6.0).abs() < 1e-15);
}

#[test]
fn eisenstein() {
    let coeffs = [2i64, 0, 0, -4, 0, 0, 1];
    let mut q = 0;
    assert_eq!(
        unsafe { nmbin_eisenstein_witness(coeffs.as_ptr(), 7, 100, &mut q) },
        NmbinStatus::Ok
    );
    assert_eq!(q, 2);
    let coeffs = [-1i64, 0, 1];
    assert_eq!(
        unsafe { nmbin_eisenstein_witness(coeffs.as_ptr(), 3, 100, &mut q) },
        NmbinStatus::Ok
    );
    assert_eq!(q, 0);
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/nmbin.h")).unwrap();
    for name in [
        "typedef struct NmbinSequence NmbinSequence;",
        "NMBIN_STATUS_BUFFER_TOO_SMALL = 6",
        "nmbin_decompose(",
        "nmbin_count_table_get(",
        "nmbin_last_error(void)",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles the C smoke test against the static library when a C compiler
/// is available.
#[test]
fn c_smoke_test() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libnmbin_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("nmbin-smoke-{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in [
        std::env::var("CC").unwrap_or_default(),
        "cc".into(),
        "gcc".into(),
        "clang".into(),
    ] {
        if !cc.is_empty()
            && Command::new(&cc)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        {
            return Ok(cc);
        }
    }
    Err(())
}
