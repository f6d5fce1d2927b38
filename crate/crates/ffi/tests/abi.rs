use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use grabin_ffi::*;

const ARBITER: &str =
    r#"{"inputs":["request"],"outputs":["grant"],"guarantees":[{"ltl":"G (request -> grant)"}]}"#;
const INVARIANT: &str = r#"{"inputs":["r"],"outputs":[],"guarantees":[{"ltl":"G r"}]}"#;

fn parse(json: &str) -> Result<*mut GrabinSpec, (GrabinStatus, String)> {
    let json = CString::new(json).unwrap();
    let mut spec = ptr::null_mut();
    let status = unsafe { grabin_spec_parse(json.as_ptr(), ptr::null(), &mut spec) };
    if status == GrabinStatus::Ok {
        Ok(spec)
    } else {
        Err((status, last_error()))
    }
}

fn last_error() -> String {
    let p = grabin_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take(s: *mut c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { grabin_string_free(s) };
    text
}

fn synthesize(spec: *const GrabinSpec) -> *mut GrabinOutcome {
    let mut outcome = ptr::null_mut();
    assert_eq!(
        unsafe { grabin_synthesize(spec, 0, &mut outcome) },
        GrabinStatus::Ok
    );
    outcome
}

#[test]
fn realizable_spec_yields_machine() {
    let spec = parse(ARBITER).unwrap();
    let outcome = synthesize(spec);
    let mut realizable = false;
    unsafe {
        assert_eq!(
            grabin_outcome_is_realizable(outcome, &mut realizable),
            GrabinStatus::Ok
        );
        assert!(realizable);
        assert!(grabin_last_error().is_null());

        let mut json = ptr::null_mut();
        assert_eq!(
            grabin_outcome_machine_json(outcome, &mut json),
            GrabinStatus::Ok
        );
        let machine = grabin::MealyMachine::from_json(&take(json)).unwrap();
        assert_eq!(machine.inputs().names(), ["request"]);

        assert_eq!(
            grabin_outcome_counterstrategy_json(outcome, &mut json),
            GrabinStatus::NotAvailable
        );
        assert!(last_error().contains("realizable"));

        grabin_outcome_free(outcome);
        grabin_spec_free(spec);
    }
}

#[test]
fn unrealizable_spec_yields_counterstrategy() {
    let spec = parse(INVARIANT).unwrap();
    let outcome = synthesize(spec);
    unsafe {
        let mut realizable = true;
        grabin_outcome_is_realizable(outcome, &mut realizable);
        assert!(!realizable);
        let mut json = ptr::null_mut();
        assert_eq!(
            grabin_outcome_machine_json(outcome, &mut json),
            GrabinStatus::NotAvailable
        );
        assert_eq!(
            grabin_outcome_counterstrategy_json(outcome, &mut json),
            GrabinStatus::Ok
        );
        let cs: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert!(cs.is_object());
        grabin_outcome_free(outcome);
        grabin_spec_free(spec);
    }
}

#[test]
fn product_hoa_and_limits() {
    let spec = parse(ARBITER).unwrap();
    unsafe {
        let mut hoa = ptr::null_mut();
        assert_eq!(grabin_product_hoa(spec, 0, &mut hoa), GrabinStatus::Ok);
        assert!(take(hoa).contains("parity max even 5"));

        assert_eq!(
            grabin_product_hoa(spec, 1, &mut hoa),
            GrabinStatus::CapacityExceeded
        );
        let mut outcome = ptr::null_mut();
        assert_eq!(
            grabin_synthesize(spec, 1, &mut outcome),
            GrabinStatus::CapacityExceeded
        );
        assert!(outcome.is_null());
        grabin_spec_free(spec);
    }
}

#[test]
fn errors_are_reported() {
    let (status, message) = parse("{").unwrap_err();
    assert_eq!(status, GrabinStatus::InvalidSpec);
    assert!(!message.is_empty());

    let (status, message) =
        parse(r#"{"inputs":["r"],"outputs":["g"],"guarantees":[{"ltl":"r U g"}]}"#).unwrap_err();
    assert_eq!(status, GrabinStatus::InvalidSpec);
    assert!(message.contains("guarantee 1"), "{message}");

    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(
            grabin_spec_parse(ptr::null(), ptr::null(), &mut spec),
            GrabinStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            grabin_spec_parse(bad.as_ptr().cast(), ptr::null(), &mut spec),
            GrabinStatus::InvalidUtf8
        );
        let json = CString::new(ARBITER).unwrap();
        assert_eq!(
            grabin_spec_parse(json.as_ptr(), ptr::null(), ptr::null_mut()),
            GrabinStatus::NullPointer
        );
        let mut outcome = ptr::null_mut();
        assert_eq!(
            grabin_synthesize(ptr::null(), 0, &mut outcome),
            GrabinStatus::NullPointer
        );
        // Freeing null is a no-op.
        grabin_spec_free(ptr::null_mut());
        grabin_outcome_free(ptr::null_mut());
        grabin_string_free(ptr::null_mut());
    }
}

#[test]
fn hoa_files_resolve_against_base_dir() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let json = std::fs::read_to_string(corpus.join("rabin-assumption.json")).unwrap();
    let json = CString::new(json).unwrap();
    let base = CString::new(corpus.to_str().unwrap()).unwrap();
    let mut spec = ptr::null_mut();
    unsafe {
        assert_eq!(
            grabin_spec_parse(json.as_ptr(), base.as_ptr(), &mut spec),
            GrabinStatus::Ok,
            "{}",
            last_error()
        );
        let outcome = synthesize(spec);
        let mut realizable = false;
        grabin_outcome_is_realizable(outcome, &mut realizable);
        assert!(realizable);
        grabin_outcome_free(outcome);
        grabin_spec_free(spec);
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/grabin.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "grabin_spec_parse",
        "grabin_synthesize",
        "grabin_outcome_machine_json",
        "grabin_last_error",
        "typedef struct GrabinSpec GrabinSpec",
        "GRABIN_STATUS_OK = 0",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("use.c");
    std::fs::write(
        &source,
        "#include \"grabin.h\"\nint f(void) { GrabinSpec *s = 0; return grabin_spec_parse(\"{}\", 0, &s); }\n",
    )
    .unwrap();
    // Only checked where a C compiler is installed.
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-std=c99", "-I"])
        .arg(header.parent().unwrap())
        .arg(&source)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
