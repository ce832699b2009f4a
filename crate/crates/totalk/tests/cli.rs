//! Input-document and report-format tests for the command-line layer.

use totalk::cli::{emit_json, emit_text, parse_input, CliError};

#[test]
fn minimal_document_is_valid() {
    let doc = parse_input(r#"{"groups": {"G": {"kind": "cyclic", "n": 3}}}"#).unwrap();
    assert_eq!(doc.groups.len(), 1);
    assert!(doc.assertions.is_empty());
}

#[test]
fn undefined_reference_is_a_semantic_error() {
    let err = parse_input(
        r#"{
            "groups": {"G": {"kind": "cyclic", "n": 3}},
            "homs": {"f": {"kind": "compose", "of": ["h"]}}
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, CliError::Semantic { .. }), "{}", err);
}

#[test]
fn cyclic_composites_are_rejected() {
    let err = parse_input(
        r#"{
            "groups": {"G": {"kind": "cyclic", "n": 3}},
            "homs": {
                "f": {"kind": "compose", "of": ["g"]},
                "g": {"kind": "compose", "of": ["f"]}
            }
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, CliError::Semantic { .. }));
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_input("{\n  \"groups\": oops\n}").unwrap_err();
    match err {
        CliError::Parse { line, .. } => assert_eq!(line, 2),
        CliError::Semantic { .. } => panic!("expected a positioned parse error"),
    }
}

#[test]
fn ill_typed_matrix_is_rejected() {
    // Z_3 -> Z_9 via [1] does not respect the torsion relation
    let err = parse_input(
        r#"{
            "groups": {"A": {"kind": "cyclic", "n": 3}, "B": {"kind": "cyclic", "n": 9}},
            "homs": {"f": {"kind": "matrix", "domain": "A", "codomain": "B", "entries": [[1]]}}
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, CliError::Semantic { .. }));
}

/// The level-9 conjugation square as a user document: with the sign flip on
/// the target, the square is expected to fail, and the assertion passes
/// because the expectation says so.
#[test]
fn level_nine_square_document() {
    let text = r#"{
        "version": 1,
        "groups": {
            "A9": {"kind": "sum", "parts": [{"kind": "cyclic", "n": 9}, {"kind": "cyclic", "n": 3}]},
            "B9": {"kind": "cyclic", "n": 9}
        },
        "homs": {
            "phi":      {"kind": "matrix", "domain": "A9", "codomain": "B9", "entries": [[3, 3]]},
            "phiprime": {"kind": "matrix", "domain": "A9", "codomain": "B9", "entries": [[3, -3]]},
            "id_a":     {"kind": "identity", "on": "A9"},
            "minus_id": {"kind": "scalar", "on": "B9", "value": -1}
        },
        "assertions": [
            {"kind": "square", "top": "phi", "bottom": "phiprime", "left": "id_a", "right": "minus_id", "expected": "fails"}
        ]
    }"#;
    let doc = parse_input(text).unwrap();
    let report = totalk::cli::run_doc(&doc).unwrap();
    assert!(report.passed(), "{:?}", report.subchecks);
    // the failing square carries its witness values
    let rendered = emit_json(std::slice::from_ref(&report));
    assert!(rendered.contains("[6]_9") || rendered.contains("[3]_9"), "{}", rendered);
}

#[test]
fn exactness_assertion() {
    let text = r#"{
        "groups": {
            "Z": {"kind": "free", "rank": 1},
            "Z3": {"kind": "cyclic", "n": 3}
        },
        "homs": {
            "times3": {"kind": "scalar", "on": "Z", "value": 3},
            "quot": {"kind": "matrix", "domain": "Z", "codomain": "Z3", "entries": [[1]]}
        },
        "assertions": [
            {"kind": "exact_at", "first": "times3", "second": "quot", "expected": "exact"},
            {"kind": "exact_at", "first": "times3", "second": "times3", "expected": "fails"}
        ]
    }"#;
    let report = totalk::cli::run_doc(&parse_input(text).unwrap()).unwrap();
    assert!(report.passed(), "{:?}", report.subchecks);
}

#[test]
fn lambda_linear_assertion() {
    let text = r#"{
        "groups": {
            "G": {"kind": "fg", "rank": 1, "torsion": [9]},
            "H": {"kind": "cyclic", "n": 3}
        },
        "homs": {
            "two": {"kind": "scalar", "on": "G", "value": 2},
            "one": {"kind": "identity", "on": "H"}
        },
        "assertions": [
            {"kind": "lambda_linear",
             "source_k0": "G", "source_k1": "H",
             "target_k0": "G", "target_k1": "H",
             "hom0": "two", "hom1": "one",
             "bound": 6, "expected": "commutes"}
        ]
    }"#;
    let report = totalk::cli::run_doc(&parse_input(text).unwrap()).unwrap();
    assert!(report.passed(), "{:?}", report.subchecks);
}

#[test]
fn cone_member_assertion() {
    let text = r#"{
        "groups": {"D": {"kind": "dyadic"}},
        "assertions": [
            {"kind": "cone_member", "cone": "product_positive", "group": "D",
             "element": "3/4", "expected": "positive"},
            {"kind": "cone_member", "cone": "product_positive", "group": "D",
             "element": "-1/2", "expected": "negative"}
        ]
    }"#;
    let report = totalk::cli::run_doc(&parse_input(text).unwrap()).unwrap();
    assert!(report.passed(), "{:?}", report.subchecks);
}

/// Round-trip: re-parsing the canonical form reproduces the same resolved
/// document (groups, maps, assertion outcomes).
#[test]
fn canonical_round_trip() {
    let corpus = [
        r#"{"groups": {"G": {"kind": "cyclic", "n": 9}},
            "homs": {"f": {"kind": "scalar", "on": "G", "value": 4},
                     "g": {"kind": "negate", "of": "f"}},
            "assertions": [
                {"kind": "square", "top": "f", "bottom": "g", "left": "f", "right": "g", "expected": "commutes"}
            ]}"#,
        r#"{"groups": {"A": {"kind": "sum", "parts": [{"kind": "cyclic", "n": 9}, {"kind": "cyclic", "n": 3}]},
                       "B": {"kind": "cyclic", "n": 9}},
            "homs": {"phi": {"kind": "matrix", "domain": "A", "codomain": "B", "entries": [[3, 3]]}}}"#,
        r#"{"groups": {"D": {"kind": "dyadic"}},
            "homs": {"r": {"kind": "mod_reduce", "on": "D", "n": 12},
                     "s": {"kind": "scalar", "on": "D", "value": "3/2"}}}"#,
    ];
    for text in corpus {
        let doc = parse_input(text).unwrap();
        let canonical = doc.canonical_json().unwrap();
        let reparsed = parse_input(&canonical.to_string()).unwrap();
        assert_eq!(doc.groups, reparsed.groups);
        for (name, h) in &doc.homs {
            let other = &reparsed.homs[name];
            assert_eq!(&h.domain, &other.domain, "{}", name);
            assert_eq!(&h.codomain, &other.codomain, "{}", name);
            assert!(
                totalk::groupexpr::homs_equal(h, other, 4).unwrap().is_equal(),
                "map {} changed across the round trip",
                name
            );
        }
        // and the canonical form is a fixed point
        let again = reparsed.canonical_json().unwrap();
        assert_eq!(canonical, again);
    }
}

#[test]
fn text_report_is_line_oriented() {
    let doc = parse_input(
        r#"{"groups": {"G": {"kind": "cyclic", "n": 3}},
            "homs": {"i": {"kind": "identity", "on": "G"}},
            "assertions": [
                {"kind": "square", "top": "i", "bottom": "i", "left": "i", "right": "i"}
            ]}"#,
    )
    .unwrap();
    let report = totalk::cli::run_doc(&doc).unwrap();
    let text = emit_text(std::slice::from_ref(&report));
    assert!(text.starts_with("CHECK input-assertions"));
    assert!(text.contains("PASS"));
    assert!(text.lines().last().unwrap().starts_with("SUMMARY"));
    // empty report list renders an empty passing summary
    let empty = emit_text(&[]);
    assert!(empty.trim().starts_with("SUMMARY 0 of 0"));
    assert!(empty.contains("PASS"));
}

#[test]
fn unknown_case_is_an_input_error() {
    let args: Vec<String> =
        ["totalk", "paper", "verify", "--case", "bogus"].iter().map(|s| s.to_string()).collect();
    let (code, message) = totalk::cli::dispatch(&args);
    assert_eq!(code, 2);
    assert!(message.contains("unknown case"));
}

#[test]
fn unknown_fixture_is_an_input_error() {
    let args: Vec<String> =
        ["totalk", "fixture", "dump", "nope"].iter().map(|s| s.to_string()).collect();
    let (code, _) = totalk::cli::dispatch(&args);
    assert_eq!(code, 2);
}

#[test]
fn lambda_linear_on_dyadic_groups() {
    // the two-divisible scalar action reduces correctly at every level
    let text = r#"{
        "groups": {"D": {"kind": "dyadic"}, "T": {"kind": "cyclic", "n": 3}},
        "homs": {
            "half3": {"kind": "scalar", "on": "D", "value": "3/2"},
            "idt": {"kind": "identity", "on": "T"}
        },
        "assertions": [
            {"kind": "lambda_linear",
             "source_k0": "D", "source_k1": "T",
             "target_k0": "D", "target_k1": "T",
             "hom0": "half3", "hom1": "idt",
             "bound": 12, "expected": "commutes"}
        ]
    }"#;
    let report = totalk::cli::run_doc(&totalk::cli::parse_input(text).unwrap()).unwrap();
    assert!(report.passed(), "{:?}", report.subchecks);
}
