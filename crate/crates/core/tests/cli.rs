use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn tiltfilt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltfilt")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_writes_default_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("a3r.tilt");
    let o = tiltfilt(dir.path(), &["validate-tilting", ws.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let side = dir.path().join("tiltfilt-validate-tilting.json");
    assert!(side.exists());
    let v = tiltfilt(dir.path(), &["verify", side.to_str().unwrap()]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
}

#[test]
fn invalid_tilting_module_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = tiltfilt(dir.path(), &["--no-report", "validate-tilting", fixture("a3r_bad.tilt").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("Ext^1(S2, S3)"), "{}", stdout(&o));
    assert!(!dir.path().join("tiltfilt-validate-tilting.json").exists());
}

#[test]
fn classify_and_phi_print_expected_values() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("a3r.tilt");
    let o = tiltfilt(dir.path(), &["--no-report", "classify", ws.to_str().unwrap(), "S3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("X(2): yes"), "{}", stdout(&o));
    let o = tiltfilt(dir.path(), &["--no-report", "--json", "phi", ws.to_str().unwrap(), "S2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["label"]["dims"], serde_json::json!([1, 1, 0]));
}

#[test]
fn explicit_report_path_verifies_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("a3r.tilt");
    let out = dir.path().join("jms.json");
    let o = tiltfilt(dir.path(), &["--report", out.to_str().unwrap(), "filter-jms", ws.to_str().unwrap(), "S2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&tiltfilt(dir.path(), &["verify", out.to_str().unwrap()])), 0);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let d = &mut v["results"][0]["record"]["factors"][0]["dims"][1];
    *d = serde_json::Value::from(d.as_u64().unwrap() + 1);
    std::fs::write(&out, v.to_string()).unwrap();
    let o = tiltfilt(dir.path(), &["verify", out.to_str().unwrap()]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).contains("factor 1"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("a3r.tilt");
    let w = ws.to_str().unwrap();
    assert_eq!(code(&tiltfilt(dir.path(), &["--no-report", "phi", w, "nosuch"])), 3);
    assert_eq!(code(&tiltfilt(dir.path(), &["--no-report", "check-lemma", w, "L99"])), 3);
    assert_eq!(code(&tiltfilt(dir.path(), &["frobnicate"])), 3);
    let broken = dir.path().join("broken.tilt");
    std::fs::write(&broken, "field F2\nquiver\nvertex 1\narrow a: 1 -> 9\n").unwrap();
    let o = tiltfilt(dir.path(), &["--no-report", "validate-tilting", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown vertex"));
}

#[test]
fn missing_files_exit_6() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&tiltfilt(dir.path(), &["verify", "missing.json"])), 6);
}

#[test]
fn hereditary_checks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("a2.tilt");
    let w = ws.to_str().unwrap();
    for args in [vec!["check-lemma", w, "L20"], vec!["check-pairs", w], vec!["sweep", w, "3"]] {
        let mut a = vec!["--no-report"];
        a.extend(args.iter().copied());
        let o = tiltfilt(dir.path(), &a);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn help_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let o = tiltfilt(dir.path(), &["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("filter-jms"));
}
