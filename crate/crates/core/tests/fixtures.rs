use std::fs;

use bgit::diagram::serialize_diagram;
use bgit::verify::{default_fixture_dir, load_fixtures, FixtureManifest, Provenance, VerifyError};

#[test]
fn shipped_manifest_validates() {
    let fixtures = load_fixtures(&default_fixture_dir()).unwrap();
    assert_eq!(fixtures.len(), 12);
    assert!(fixtures.iter().any(|f| f.entry.provenance == Provenance::Paper));
    let torus = fixtures.iter().find(|f| f.name() == "torus_square").unwrap();
    assert_eq!(torus.expected("bicorns"), Some(&toml::Value::Integer(2)));
}

#[test]
fn shipped_files_are_canonical() {
    for f in load_fixtures(&default_fixture_dir()).unwrap() {
        let text = fs::read_to_string(default_fixture_dir().join(&f.entry.file)).unwrap();
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(serialize_diagram(f.diagram.spec()), body, "{}", f.name());
    }
}

fn manifest_error(entry: &str) -> String {
    manifest_error_for("t.diag", entry)
}

fn manifest_error_for(file: &str, entry: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(default_fixture_dir().join("torus_square.diag"), dir.path().join("t.diag")).unwrap();
    let m = FixtureManifest::from_toml(&format!("[[fixture]]\nname = \"t\"\nfile = \"{file}\"\n{entry}")).unwrap();
    match m.validate(dir.path()) {
        Err(e @ VerifyError::Manifest { .. }) => e.to_string(),
        other => panic!("expected a manifest error, got {other:?}"),
    }
}

#[test]
fn bad_entries_are_reported_with_their_locus() {
    let ok = "genus = 1\nintersections = { AB = 1 }\nprovenance = \"TRIVIAL\"\n";
    let e = manifest_error(&ok.replace("genus = 1", "genus = 2"));
    assert!(e.contains("fixture[0] `t`") && e.contains("genus"), "{e}");
    let e = manifest_error(&ok.replace("AB = 1", "AB = 3"));
    assert!(e.contains("declared 3"), "{e}");
    let e = manifest_error(&ok.replace("{ AB = 1 }", "{}"));
    assert!(e.contains("not declared"), "{e}");
    let e = manifest_error(&format!("{ok}expected.colour = {{ value = 1, provenance = \"DERIVED\" }}\n"));
    assert!(e.contains("unknown expected value"), "{e}");
    let e = manifest_error_for("missing.diag", ok);
    assert!(e.contains("missing.diag"), "{e}");
}

#[test]
fn expected_values_need_a_provenance() {
    let text = "[[fixture]]\nname = \"t\"\nfile = \"t.diag\"\ngenus = 1\nintersections = { AB = 1 }\n\
                provenance = \"TRIVIAL\"\nexpected.bigons = { value = 0 }\n";
    assert!(matches!(FixtureManifest::from_toml(text), Err(VerifyError::Manifest { .. })));
    assert!(FixtureManifest::from_toml(&text.replace("{ value = 0 }", "{ value = 0, provenance = \"GUESS\" }")).is_err());
}
