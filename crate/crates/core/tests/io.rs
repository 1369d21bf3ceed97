mod common;

use blinfty::io::{corpus, fixture, Document, TableKind};
use blinfty::Error;
use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn parse_err_line(text: &str) -> usize {
    match Document::parse(text) {
        Err(Error::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn corpus_round_trips_byte_for_byte() {
    assert!(corpus().len() >= 10);
    for (name, text) in corpus() {
        let doc = Document::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&doc.serialize(), text, "{name}");
    }
}

#[test]
fn fixture_a_document_is_fixture_a() {
    let doc = Document::parse(fixture("fixtureA").unwrap()).unwrap();
    assert_eq!(doc.structure().unwrap(), fixture_a());
    assert_eq!(doc.bounds.as_ref().unwrap().max_letters, 2);
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# a comment\nformat blinfty 1\n\ngen q1 parity 0   # even\ngen q2 parity 1\ntable structure p parity 1\n  op 2 0 : q1·q2 -> 1 1\n";
    let doc = Document::parse(text).unwrap();
    assert_eq!(doc.structure().unwrap(), fixture_a());
    assert_eq!(doc.serialize(), "format blinfty 1\ngen q1 parity 0\ngen q2 parity 1\n\ntable structure p parity 1\nop 2 0 : q1·q2 -> 1 1\n");
}

#[test]
fn noncanonical_input_is_normalized_with_sign() {
    let text = "format blinfty 1\ngen a parity 1\ngen b parity 1\ntable pointed t parity 0\nop 2 0 : b·a -> 3 1\n";
    let doc = Document::parse(text).unwrap();
    assert!(doc.serialize().contains("op 2 0 : a·b -> -3 1\n"));
}

#[test]
fn parity_violation_names_the_line() {
    let text = "format blinfty 1\ngen q1 parity 0\ngen q2 parity 1\n\ntable structure p parity 1\nop 2 0 : q1·q2 -> 1 1\nop 1 0 : q1 -> 1 1\n";
    assert_eq!(parse_err_line(text), 7);
    match Document::parse(text) {
        Err(e) => assert!(e.to_string().starts_with("line 7: parity mismatch")),
        Ok(_) => unreachable!(),
    }
}

#[test]
fn other_errors_name_their_line() {
    let base = "format blinfty 1\ngen a parity 0\ngen b parity 1\ntable structure p parity 1\n";
    assert_eq!(parse_err_line(&format!("{base}op 1 0 : c -> 1 1\n")), 5);
    assert_eq!(parse_err_line(&format!("{base}op 1 0 : b -> 1/0 1\n")), 5);
    assert_eq!(parse_err_line(&format!("{base}op 1 0 : b -> x 1\n")), 5);
    assert_eq!(parse_err_line(&format!("{base}op 1 0 : b -> 1 1\nop 1 0 : b -> 2 1\n")), 6);
    assert_eq!(parse_err_line(&format!("{base}op 2 0 : b -> 1 1\n")), 5);
    assert_eq!(parse_err_line(&format!("{base}op 1 0 genus 1 : b -> 1 1\n")), 5);
    assert_eq!(parse_err_line("format blinfty 2\n"), 1);
    assert_eq!(parse_err_line("gen a parity 0\n"), 1);
    assert_eq!(parse_err_line("format blinfty 1\ngen a parity 2\n"), 2);
    assert_eq!(parse_err_line("format blinfty 1\ngen a parity 0\ngen a parity 0\ntable structure p parity 1\n"), 4);
    assert_eq!(parse_err_line("format blinfty 1\ngen a parity 0\ntable structure p parity 0\n"), 3);
    assert_eq!(parse_err_line("format blinfty 1\ngen a parity 0\nop 1 1 : a -> 1 a\n"), 3);
    assert_eq!(parse_err_line("format blinfty 1\ngen a parity 0\nchain c\nterm 1 a ⊙ z\n"), 4);
    assert_eq!(
        parse_err_line("format blinfty 1\ngen a parity 0 action 1\ngen b parity 1 action 2\ntable structure p parity 1\nop 1 1 : a -> 1 b\nbounds max_letters 2 action_drop\n"),
        6
    );
}

#[test]
fn typed_accessors() {
    let doc = Document::parse(fixture("planarity-two").unwrap()).unwrap();
    assert_eq!(doc.augmentations().unwrap().len(), 2);
    assert_eq!(doc.pointed().unwrap().table().name(), "pb");
    let fam = Document::parse(fixture("multi2").unwrap()).unwrap().multi_point_family().unwrap();
    assert_eq!(fam.m(), 2);
    let sd = Document::parse(fixture("sd").unwrap()).unwrap();
    assert!(sd.umodule().is_ok());
    let ibl = Document::parse(fixture("iblA").unwrap()).unwrap();
    assert!(ibl.ibl().is_ok());
    assert_eq!(ibl.tables_of(TableKind::Ibl).count(), 1);
    let act = Document::parse(fixture("action").unwrap()).unwrap();
    assert!(act.structure().unwrap().table().action_drop());
    assert!(act.chain("witness").is_some());
}

#[test]
fn random_documents_round_trip() {
    let mut rng = StdRng::seed_from_u64(31);
    for i in 0..1000 {
        let doc = random_document(&mut rng);
        let text = doc.serialize();
        let back = Document::parse(&text).unwrap_or_else(|e| panic!("doc {i}: {e}\n{text}"));
        assert_eq!(back.serialize(), text, "doc {i}");
        assert_eq!(back, doc, "doc {i}");
    }
}
