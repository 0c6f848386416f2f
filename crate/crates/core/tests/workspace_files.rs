use std::path::PathBuf;

use tiltcore::io::{parse_str, parse_workspace, Workspace};

fn load(name: &str) -> Workspace {
    parse_workspace(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

#[test]
fn bundled_fixtures_round_trip() {
    for name in ["a2.tilt", "a3r.tilt", "a3r_regular.tilt", "a3r_bad.tilt"] {
        let ws = load(name);
        let text = ws.file.to_canonical_string();
        let again = parse_str(&text).unwrap();
        assert_eq!(again.file.to_canonical_string(), text, "{name}");
        assert_eq!(again.file.modules.len(), ws.file.modules.len());
    }
}

#[test]
fn fixture_contents() {
    let a2 = load("a2.tilt");
    assert_eq!(a2.file.modules.len(), 3);
    assert_eq!(a2.file.tilting.as_ref().unwrap().n, Some(1));
    let a3 = load("a3r.tilt");
    let t = a3.file.tilting.as_ref().unwrap();
    assert_eq!(t.summands, vec!["P1", "P2", "S1"]);
    assert_eq!(t.n, Some(2));
    assert_eq!(a3.file.relations.len(), 1);
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_str("field F2\nquiver\nvertex 1\nbogus line\n").unwrap_err().to_string();
    assert!(e.contains("at 4:1"), "{e}");
}
