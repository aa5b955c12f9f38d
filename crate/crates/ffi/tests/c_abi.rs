use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use rpic_ffi::*;

fn run_job(spec: &str, command: Option<&str>) -> (RpicStatus, *mut RpicReport) {
    let spec = CString::new(spec).unwrap();
    let command = command.map(|c| CString::new(c).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        rpic_run(
            spec.as_ptr(),
            command.as_ref().map_or(ptr::null(), |c| c.as_ptr()),
            true,
            &mut out,
        )
    };
    (status, out)
}

fn last_error() -> String {
    let p = rpic_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn picard_round_trip() {
    let (status, report) = run_job(
        r#"{"group":{"kind":"gl","n":3},"g":2,"n":2,"degree":{"class":[1,0,0]}}"#,
        Some("picard"),
    );
    assert_eq!(status, RpicStatus::Ok);
    let mut rank = 0usize;
    assert_eq!(
        unsafe { rpic_report_free_rank(report, &mut rank) },
        RpicStatus::Ok
    );
    assert_eq!(rank, 5);

    let json = unsafe { rpic_report_to_json(report) };
    let parsed = unsafe { CStr::from_ptr(json) }
        .to_str()
        .unwrap()
        .to_string();
    assert!(parsed.contains("\"schema_version\": 1"));
    let text = unsafe { rpic_report_to_text(report) };
    assert!(unsafe { CStr::from_ptr(text) }
        .to_str()
        .unwrap()
        .contains("rank 5"));
    unsafe {
        rpic_string_free(json);
        rpic_string_free(text);
        rpic_report_free(report);
    }
}

#[test]
fn error_codes() {
    let (status, report) = run_job("{not json", None);
    assert_eq!(status, RpicStatus::Parse);
    assert!(report.is_null());
    assert!(last_error().contains("line 1"));

    let (status, _) = run_job(r#"{"group":{"kind":"sl","n":2}}"#, Some("no-such-command"));
    assert_eq!(status, RpicStatus::Validation);

    let (status, _) = run_job(
        r#"{"group":{"kind":"sl","n":2},"degree":{"lift":[1,1]}}"#,
        Some("picard"),
    );
    assert_eq!(status, RpicStatus::Validation);
    assert!(last_error().contains("degree"));

    let (status, report) = run_job(r#"{"group":{"kind":"sl","n":3}}"#, Some("pi1"));
    assert_eq!(status, RpicStatus::Ok);
    let mut rank = 0usize;
    assert_eq!(
        unsafe { rpic_report_free_rank(report, &mut rank) },
        RpicStatus::NotApplicable
    );
    unsafe { rpic_report_free(report) };

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { rpic_run(ptr::null(), ptr::null(), false, &mut out) },
        RpicStatus::NullPointer
    );
    unsafe {
        rpic_report_free(ptr::null_mut());
        rpic_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(rpic_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/rpic.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "rpic_run",
        "rpic_report_free",
        "rpic_report_to_json",
        "rpic_report_free_rank",
        "rpic_string_free",
        "rpic_last_error_message",
        "RPIC_STATUS_VERIFICATION",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{}\"\nint main(void) {{ RpicReport *r = 0; return (int)rpic_run(\"{{}}\", 0, false, &r); }}\n",
            header.display()
        ),
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
}
