use std::fs;
use std::path::PathBuf;

use fairext_core::io::{canonicalize, parse_instance, serialize_instance};
use fairext_core::{CounterexampleCatalog, Error};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/instances")
}

#[test]
fn corpus_round_trips_to_canonical_form() {
    let mut seen = 0;
    for entry in fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|x| x.to_str()) != Some("json") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let inst = parse_instance(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let once = serialize_instance(&inst);
        assert_eq!(once, canonicalize(&text).unwrap(), "{}", path.display());
        assert_eq!(serialize_instance(&parse_instance(&once).unwrap()), once);
        seen += 1;
    }
    assert!(seen >= 10, "corpus has only {seen} documents");
}

#[test]
fn catalog_instance_matches_golden_file() {
    let golden = include_str!("data/ef1_block_from_efx.json").trim_end();
    let catalog = CounterexampleCatalog::load().unwrap();
    let entry = catalog.get("EF1_BLOCK_FROM_EFX").unwrap();
    assert_eq!(serialize_instance(&entry.instance), golden);
}

#[test]
fn truncated_document_reports_position() {
    let golden = include_str!("data/ef1_block_from_efx.json");
    let cut = &golden[..golden.len() / 2];
    match parse_instance(cut) {
        Err(Error::Parse { line, column, .. }) => assert!(line == 1 && column > 0),
        other => panic!("expected a parse error, got {other:?}"),
    }
    let multiline = "{\n  \"agents\": [\"1\",\n";
    assert!(matches!(parse_instance(multiline), Err(Error::Parse { line: 3, .. })));
}

#[test]
fn schema_errors_are_distinguished() {
    let unknown_agent =
        r#"{"agents":["1"],"items":["a"],"valuations":[[1]],"assigned":{"a":"9"},"query":{"variant":"EFAE"}}"#;
    assert!(matches!(parse_instance(unknown_agent), Err(Error::Schema(_))));
    let extra_key = r#"{"agents":["1"],"items":[],"valuations":[[]],"query":{"variant":"EFAE"},"colour":1}"#;
    assert!(matches!(parse_instance(extra_key), Err(Error::Schema(_))));
}
