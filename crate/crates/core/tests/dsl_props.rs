mod common;

use common::*;
use proptest::prelude::*;
use roc_core::dsl::{self, DslError, ParseError};

fn well_formed(e: &ParseError) -> bool {
    e.span.line >= 1 && e.span.column >= 1 && !e.expected.is_empty() && !e.found.is_empty()
}

#[test]
fn process_fixtures_round_trip() {
    for name in PROCESS_FIXTURES {
        let m = process(name);
        let text = dsl::serialize_process(&m);
        assert_eq!(dsl::parse_process(&text).unwrap(), m, "{name}");
        assert_eq!(dsl::serialize_process(&dsl::parse_process(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn goal_fixtures_round_trip() {
    for name in GOAL_FIXTURES {
        let g = goals(name);
        let text = dsl::serialize_goals(&g);
        assert_eq!(dsl::parse_goals(&text).unwrap(), g, "{name}");
        assert_eq!(dsl::serialize_goals(&dsl::parse_goals(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn table_fixtures_round_trip() {
    for name in CMAP_FIXTURES {
        let c = cmap(name);
        assert_eq!(dsl::parse_components(&dsl::serialize_components(&c)).unwrap(), c, "{name}");
    }
    let r = registry("electrotech.problems");
    assert_eq!(r.len(), 4);
    assert_eq!(dsl::parse_registry(&dsl::serialize_registry(&r)).unwrap(), r);
    let t = dsl::parse_refinement(&read("alveo-logistics.refine")).unwrap();
    assert_eq!(dsl::parse_refinement(&dsl::serialize_refinement(&t)).unwrap(), t);
}

#[test]
fn electrotech_asis_shape() {
    let m = process("electrotech-asis.proc");
    assert_eq!((m.places.len(), m.fragments.len()), (5, 4));
    assert_eq!(
        m.triplet(&"PF4".into()).unwrap(),
        "PF4 :<(Stock), exit, manual order processing strategy>"
    );
    let tobe = process("electrotech-tobe.proc");
    assert_eq!(tobe.triplet(&"PF6".into()).unwrap(), "PF6 :<(Stock), (Stock), Reservation Strategy>");
}

#[test]
fn table_one_has_four_entries_and_two_globals() {
    let c = cmap("alveo-sd.cmap");
    assert_eq!(c.entries.len(), 4);
    assert_eq!(c.global.len(), 2);
}

#[test]
fn broken_fixture_fails_validation() {
    match dsl::parse_process(&read("broken.proc")) {
        Err(DslError::Validation(v)) => assert_eq!(v.code.to_string(), "DanglingPlaceRef"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn errors_are_reproducible() {
    let text = "process \"x\" kind asis {\n  place I0 \"a\" start\n}";
    let a = dsl::parse_process_unchecked(text).unwrap_err().to_string();
    let b = dsl::parse_process_unchecked(text).unwrap_err().to_string();
    assert_eq!(a, b);
    assert_eq!(a, "<input>:3:1: expected ';', found '}'");
}

/// Fragments of valid syntax glued together at random.
fn token_soup() -> impl Strategy<Value = String> {
    let words = prop::sample::select(vec![
        "process", "kind", "asis", "tobe", "{", "}", "(", ")", ";", ",", ":", "->", "place", "fragment", "marking",
        "strategy", "exit", "start", "deficient", "problems", "resolves", "goals", "node", "edge", "goal", "need",
        "supports", "derives", "realisedby", "\"s\"", "I0", "PF1", "3", "problem", "map", "map-all", "corr", "refine",
        "#c\n", "\"", "@", "-",
    ]);
    prop::collection::vec(words, 0..40).prop_map(|w| w.join(" "))
}

fn arb_text() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::collection::vec(any::<u8>(), 0..200).prop_map(|b| String::from_utf8_lossy(&b).into_owned()),
        token_soup(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_are_total(text in arb_text()) {
        if let Err(DslError::Parse(e)) = dsl::parse_process(&text) {
            prop_assert!(well_formed(&e));
        }
        if let Err(DslError::Parse(e)) = dsl::parse_goals(&text) {
            prop_assert!(well_formed(&e));
        }
        if let Err(e) = dsl::parse_registry(&text) { prop_assert!(well_formed(&e)); }
        if let Err(e) = dsl::parse_components(&text) { prop_assert!(well_formed(&e)); }
        if let Err(e) = dsl::parse_correspondence(&text) { prop_assert!(well_formed(&e)); }
        if let Err(e) = dsl::parse_refinement(&text) { prop_assert!(well_formed(&e)); }
    }

    #[test]
    fn random_models_round_trip(m in arb_net()) {
        let text = dsl::serialize_process(&m);
        let back = dsl::parse_process(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(dsl::serialize_process(&back), text);
    }
}
