use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rsci_ffi::*;

fn sample() -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures/sample_issue/issue.json");
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = rsci_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn bundle_lifecycle() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(rsci_bundle_load(sample().as_ptr(), &mut b), RsciStatus::Ok);

        let (mut ok, mut errors, mut warnings) = (false, usize::MAX, usize::MAX);
        assert_eq!(rsci_bundle_validate(b, &mut ok, &mut errors, &mut warnings), RsciStatus::Ok);
        assert!(ok);
        assert_eq!(errors, 0);
        assert!(warnings > 0);

        let mut json = ptr::null_mut();
        assert_eq!(rsci_bundle_validation_json(b, &mut json), RsciStatus::Ok);
        let v: serde_json::Value = serde_json::from_slice(CStr::from_ptr(json).to_bytes()).unwrap();
        assert_eq!(v["is_exportable"], true);
        rsci_string_free(json);

        let mut name = ptr::null_mut();
        let mut zip = RsciBuffer { data: ptr::null_mut(), len: 0 };
        assert_eq!(rsci_bundle_package(b, 2018, 1, 12, &mut name, &mut zip), RsciStatus::Ok);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "03178471_2018_01_12(1)_unicode.zip");
        let bytes = std::slice::from_raw_parts(zip.data, zip.len);
        assert_eq!(rsci_core::export::read_zip_entries(bytes).unwrap().len(), 3);
        rsci_string_free(name);
        rsci_buffer_free(zip);

        let mut zip = RsciBuffer { data: ptr::null_mut(), len: 0 };
        assert_eq!(
            rsci_bundle_package(b, 2018, 2, 30, &mut name, &mut zip),
            RsciStatus::InvalidArgument
        );
        assert!(last_error().contains("2018-2-30"));
        rsci_bundle_free(b);
    }
}

#[test]
fn load_errors() {
    unsafe {
        let mut b = ptr::null_mut();
        let missing = CString::new("/nonexistent/issue.json").unwrap();
        assert_eq!(rsci_bundle_load(missing.as_ptr(), &mut b), RsciStatus::Io);
        assert!(b.is_null());
        assert!(last_error().contains("/nonexistent/issue.json"));

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\"journal\": 3}").unwrap();
        let path = CString::new(path.to_str().unwrap()).unwrap();
        assert_eq!(rsci_bundle_load(path.as_ptr(), &mut b), RsciStatus::Schema);

        assert_eq!(rsci_bundle_load(ptr::null(), &mut b), RsciStatus::NullArgument);
        assert_eq!(rsci_bundle_load(sample().as_ptr(), ptr::null_mut()), RsciStatus::NullArgument);
        let bad_utf8 = [0xffu8, 0];
        assert_eq!(rsci_bundle_load(bad_utf8.as_ptr().cast(), &mut b), RsciStatus::InvalidUtf8);

        rsci_bundle_free(ptr::null_mut());
        rsci_string_free(ptr::null_mut());
        rsci_buffer_free(RsciBuffer { data: ptr::null_mut(), len: 0 });
    }
}

#[test]
fn not_exportable() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(sample().to_str().unwrap())
        .unwrap()
        .replace("\"pages\": \"1-20\"", "\"pages\": \"\"");
    let src = PathBuf::from(sample().to_str().unwrap()).parent().unwrap().join("files");
    std::fs::create_dir(dir.path().join("files")).unwrap();
    for e in std::fs::read_dir(src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.path().join("files").join(e.file_name())).unwrap();
    }
    let path = dir.path().join("issue.json");
    std::fs::write(&path, text).unwrap();
    let path = CString::new(path.to_str().unwrap()).unwrap();
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(rsci_bundle_load(path.as_ptr(), &mut b), RsciStatus::Ok);
        let mut ok = true;
        rsci_bundle_validate(b, &mut ok, ptr::null_mut(), ptr::null_mut());
        assert!(!ok);
        let mut name = ptr::null_mut();
        let mut zip = RsciBuffer { data: ptr::null_mut(), len: 0 };
        assert_eq!(rsci_bundle_package(b, 2018, 1, 12, &mut name, &mut zip), RsciStatus::NotExportable);
        assert!(name.is_null() && zip.data.is_null());
        assert!(last_error().contains("MANDATORY_MISSING"), "{}", last_error());
        rsci_bundle_free(b);
    }
}

#[test]
fn profile_indicators() {
    let counts = [10u32, 8, 5, 4, 3];
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(rsci_profile_new(counts.as_ptr(), counts.len(), &mut p), RsciStatus::Ok);
        assert_eq!(rsci_profile_h_index(p), 4);
        assert_eq!(rsci_profile_g_index(p), 5);
        assert_eq!(rsci_profile_i10_index(p), 1);
        assert_eq!(rsci_profile_total_citations(p), 30);
        let (mut n, mut d, mut w) = (0, 0, true);
        assert_eq!(rsci_profile_hirsch_a(p, &mut n, &mut d, &mut w), RsciStatus::Ok);
        assert_eq!((n, d, w), (15, 8, false));
        rsci_profile_free(p);

        assert_eq!(rsci_profile_new(ptr::null(), 0, &mut p), RsciStatus::Ok);
        assert_eq!(rsci_profile_h_index(p), 0);
        assert_eq!(rsci_profile_hirsch_a(p, &mut n, &mut d, ptr::null_mut()), RsciStatus::EmptyProfile);
        rsci_profile_free(p);

        let zeros = [0u32; 3];
        rsci_profile_new(zeros.as_ptr(), 3, &mut p);
        assert_eq!(rsci_profile_hirsch_a(p, &mut n, &mut d, ptr::null_mut()), RsciStatus::ZeroH);
        rsci_profile_free(p);

        assert_eq!(rsci_profile_new(ptr::null(), 2, &mut p), RsciStatus::NullArgument);
        assert_eq!(rsci_profile_h_index(ptr::null()), 0);
    }
}

#[test]
fn impact_factor_and_issn() {
    unsafe {
        let (mut n, mut d) = (0, 0);
        assert_eq!(rsci_impact_factor(30, 20, 15, 10, &mut n, &mut d), RsciStatus::Ok);
        assert_eq!((n, d), (2, 1));
        assert_eq!(rsci_impact_factor(7, 0, 2, 2, &mut n, &mut d), RsciStatus::Ok);
        assert_eq!((n, d), (7, 4));
        assert_eq!(rsci_impact_factor(1, 1, 0, 0, &mut n, &mut d), RsciStatus::NoPublications);
        assert_eq!(rsci_impact_factor(1, 1, 1, 1, ptr::null_mut(), &mut d), RsciStatus::NullArgument);

        let good = CString::new("0317-8471").unwrap();
        let bad = CString::new("0317-8470").unwrap();
        assert!(rsci_check_issn(good.as_ptr()));
        assert!(!rsci_check_issn(bad.as_ptr()));
        assert!(!rsci_check_issn(ptr::null()));
    }
}

fn header() -> (PathBuf, String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/rsci.h");
    let text = std::fs::read_to_string(&path).unwrap();
    (path, text)
}

#[test]
fn header_declares_every_export() {
    let (_, h) = header();
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .split("#[no_mangle]")
        .skip(1)
        .map(|chunk| {
            let after = &chunk[chunk.find("fn ").unwrap() + 3..];
            &after[..after.find('(').unwrap()]
        })
        .collect();
    assert!(exported.len() >= 15, "{exported:?}");
    for name in exported {
        let declared = h.contains(&format!(" {name}(")) || h.contains(&format!("*{name}("));
        assert!(declared, "{name} missing from header");
    }
    for ty in ["typedef struct RsciBundle RsciBundle;", "typedef struct RsciProfile RsciProfile;", "RSCI_STATUS_NOT_EXPORTABLE = 5"] {
        assert!(h.contains(ty), "{ty} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let (path, _) = header();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let Ok(out) = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&path)
        .output()
    else {
        eprintln!("no C compiler ({cc}); skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
