//! CLI behavior: exit codes, exact outputs for pinned examples, document
//! round-trips, and agreement between the CLI and direct library calls.

use std::io::Write;

use thimble_cli::doc::{
    category_from_doc, category_to_doc, parse_document, resolve_category, serialize, Document,
};
use thimble_cli::run_command;

use thimble::category::fixture;
use thimble::field::{Field, FieldSpec};
use thimble::homcx::hom_groups;
use thimble::module::{projective, simple};

fn q() -> Field {
    Field::new(FieldSpec::rational())
}

fn write_temp(content: &str, suffix: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new()
        .suffix(suffix)
        .tempfile()
        .expect("temp file");
    f.write_all(content.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

#[test]
fn halftwist_word_output() {
    let (code, out) = run_command(["halftwist", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "s2 s1 s2\n");
    let (code, out) = run_command(["halftwist", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "s1\n");
}

#[test]
fn maslov_triangle_output() {
    let (code, out) = run_command(["maslov", "triangle", "0", "3/10", "-3/10"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-1\n");
    let (code, out) = run_command(["maslov", "triangle", "0", "-3/10", "3/10"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
    // non-transverse input is a precondition failure, exit 1
    let (code, _) = run_command(["maslov", "index", "0", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_subcommand_exits_2() {
    let (code, _) = run_command(["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = run_command(["hom", "A2", "S1"]); // missing argument
    assert_eq!(code, 2);
    let (code, _) = run_command(["hom", "B7", "S1", "S2"]); // unknown fixture
    assert_eq!(code, 2);
}

#[test]
fn ss_table_has_convergence_line() {
    let (code, out) = run_command(["ss", "A2", "S2", "S1", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(out.contains("E∞ total dims = Hom dims: OK"), "{out}");
    assert!(out.contains("j=2"));
    assert!(out.contains("k=-1"));
}

#[test]
fn category_round_trip_is_canonical() {
    for name in ["A2", "triangular(3)", "A4mu3"] {
        let cat = fixture(name, q()).unwrap();
        let doc = Document::Category(category_to_doc(&cat));
        let text = serialize(&doc);
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc, "parse(serialize(x)) = x for {name}");
        let text2 = serialize(&parsed);
        assert_eq!(text, text2, "canonical serialization for {name}");
        // parsed category validates
        let Document::Category(cdoc) = parsed else { unreachable!() };
        let cat2 = category_from_doc(&cdoc, false).unwrap();
        assert!(cat2.validate().pass());
        assert_eq!(cat2, cat);
    }
}

#[test]
fn category_document_loads_from_file() {
    let cat = fixture("A4mu3", q()).unwrap();
    let text = serialize(&Document::Category(category_to_doc(&cat)));
    let f = write_temp(&text, ".json");
    let path = f.path().to_str().unwrap();
    let (code, out) = run_command(["validate", path]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"));
    // and it resolves as a category argument
    let (code, out) = run_command(["hom", path, "P4", "S4"]);
    assert_eq!(code, 0);
    assert!(out.contains("0:1"), "{out}");
}

#[test]
fn char2_document_needs_override() {
    let cat = fixture("A2", q()).unwrap();
    let mut doc = category_to_doc(&cat);
    doc.field = "2".to_string();
    let text = serialize(&Document::Category(doc.clone()));
    let f = write_temp(&text, ".json");
    let path = f.path().to_str().unwrap();
    let (code, out) = run_command(["validate", path]);
    assert_eq!(code, 2, "{out}");
    let (code, out) = run_command(["validate", path, "--allow-char2"]);
    assert_eq!(code, 0, "{out}");
    // a coefficient 1/2 cannot be parsed in characteristic 2 even with the
    // override (the denominator vanishes)
    doc.mu.push(thimble_cli::doc::CatMuDoc {
        chain: vec![1, 2],
        inputs: vec!["a".to_string()],
        output: "a".to_string(),
        coeff: "1/2".to_string(),
    });
    let text = serialize(&Document::Category(doc));
    let f = write_temp(&text, ".json");
    let (code, out) = run_command(["validate", f.path().to_str().unwrap(), "--allow-char2"]);
    assert_eq!(code, 2);
    assert!(out.contains("error"), "{out}");
}

#[test]
fn module_document_for_p2_checks() {
    let cat = fixture("A2", q()).unwrap();
    let p2 = projective(&cat, 2).unwrap();
    let mdoc = thimble_cli::doc::module_to_doc(&p2, "A2");
    let text = serialize(&Document::Module(mdoc));
    let f = write_temp(&text, ".json");
    let path = f.path().to_str().unwrap();
    let (code, out) = run_command(["validate", path]);
    assert_eq!(code, 0, "{out}");
    // round trip through the resolver matches the constructor
    let cat2 = resolve_category("A2", q(), false).unwrap();
    let m = thimble_cli::doc::resolve_module(path, &cat2, false).unwrap();
    assert_eq!(m.spaces(), p2.spaces());
    assert_eq!(m.mu_table(), p2.mu_table());
}

#[test]
fn validation_failure_exits_1() {
    // a category document with a degree-inconsistent μ entry
    let cat = fixture("A2", q()).unwrap();
    let mut doc = category_to_doc(&cat);
    doc.mu.push(thimble_cli::doc::CatMuDoc {
        chain: vec![1, 2],
        inputs: vec!["a".to_string()],
        output: "a".to_string(),
        coeff: "1".to_string(),
    });
    let text = serialize(&Document::Category(doc));
    let f = write_temp(&text, ".json");
    let (code, out) = run_command(["validate", f.path().to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("DegreeMismatch"), "{out}");
}

#[test]
fn cli_agrees_with_library_calls() {
    let cat = fixture("triangular(3)", q()).unwrap();
    let p3 = projective(&cat, 3).unwrap();
    let s1 = simple(&cat, 1).unwrap();
    let dims = hom_groups(&p3, &s1).unwrap();
    let (code, out) = run_command(["hom", "triangular(3)", "P3", "S1"]);
    assert_eq!(code, 0);
    let expected = format!(
        "Hom*(P3, S1) over triangular(3): {}\n",
        thimble_cli::render::dims_line(&dims)
    );
    assert_eq!(out, expected);
}

#[test]
fn struct_output_is_json() {
    for args in [
        vec!["hom", "A2", "S2", "S1", "--format", "struct"],
        vec!["ss", "A2", "P2", "S2", "--format", "struct"],
        vec!["maslov", "minus-mu", "2", "1", "--format", "struct"],
        vec!["halftwist", "4", "--format", "struct"],
        vec!["twist", "A2", "P1", "P2", "--format", "struct"],
    ] {
        let (code, out) = run_command(args.clone());
        assert_eq!(code, 0, "{args:?}: {out}");
        serde_json::from_str::<serde_json::Value>(&out).expect("valid json");
    }
}

#[test]
fn twist_struct_output_round_trips_as_module() {
    let (code, out) = run_command(["twist", "A2", "P1", "P2", "--format", "struct"]);
    assert_eq!(code, 0);
    let f = write_temp(&out, ".json");
    let path = f.path().to_str().unwrap();
    let (code, out2) = run_command(["validate", path]);
    assert_eq!(code, 0, "{out2}");
    // the serialized twist is the S₂-shaped module
    let cat = resolve_category("A2", q(), false).unwrap();
    let m = thimble_cli::doc::resolve_module(path, &cat, false).unwrap();
    assert_eq!(thimble::quasi::iso_type_simple(&m), Some(2));
}

#[test]
fn job_documents_execute() {
    let jdoc = Document::Job(thimble_cli::doc::JobDoc {
        format: 1,
        command: vec!["halftwist".into(), "3".into()],
    });
    let text = serialize(&jdoc);
    assert_eq!(parse_document(&text).unwrap(), jdoc);
    let f = write_temp(&text, ".json");
    let (code, out) = run_command(["run", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "s2 s1 s2\n");
}

#[test]
fn run_command_is_deterministic() {
    for args in [
        vec!["ss", "triangular(3)", "P3", "S2"],
        vec!["edge", "A2", "S2", "P1"],
        vec!["mutate", "A4mu3", "P", "s3", "s2", "s3", "s1", "s2", "s3"],
        vec!["validate", "triangular(4)", "--random-modules", "2", "--seed", "11"],
    ] {
        let first = run_command(args.clone());
        let second = run_command(args.clone());
        assert_eq!(first, second, "{args:?}");
    }
}
