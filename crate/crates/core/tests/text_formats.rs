use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_spaces::enumerate::{all_posets_up_to, random_poset};
use poset_spaces::finite_space::FiniteTopSpace;
use poset_spaces::semi_topogenous::interval_order;
use poset_spaces::text::{parse_input, parse_poset, read_input_file, write_poset, write_space, write_subset_order, InputFile, TextError};

#[test]
fn poset_round_trip_exhaustive() {
    for p in all_posets_up_to(4) {
        let back = parse_poset(&write_poset(&p), "x").unwrap();
        assert_eq!(back.strict_pairs(), p.strict_pairs());
        assert_eq!(back.elements(), p.elements());
    }
}

#[test]
fn name_defaults_to_argument() {
    let p = parse_poset("poset\nelem a\n", "fallback").unwrap();
    assert_eq!(p.name(), "fallback");
}

#[test]
fn errors_carry_lines() {
    let cases = [
        ("poset p\nelem a a\n", 2),
        ("poset p\nelem a\nfoo a\n", 3),
        ("poset p\nelem a b\nle a\n", 3),
        ("space s\npoint x\nopen U y\n", 3),
        ("metric m\npoint p q\ndist p q abc\n", 3),
    ];
    for (text, line) in cases {
        let err = parse_input(text, "f").unwrap_err();
        let got = match &err {
            TextError::Parse { line, .. } | TextError::Validation { line, .. } => *line,
            TextError::Io { .. } => 0,
        };
        assert_eq!(got, line, "{text:?}: {err}");
    }
}

#[test]
fn antisymmetry_violation_is_validation() {
    let err = parse_poset("poset p\nelem a b\nle a b\nle b a\n", "f").unwrap_err();
    assert!(matches!(err, TextError::Validation { line: 4, .. }), "{err}");
}

#[test]
fn missing_file() {
    let err = read_input_file(std::path::Path::new("/nonexistent/x.poset")).unwrap_err();
    assert!(matches!(err, TextError::Io { .. }));
}

#[test]
fn spaces_round_trip() {
    for n in 0..=3 {
        for t in FiniteTopSpace::all_topologies(n) {
            match parse_input(&write_space(&t), "x").unwrap() {
                InputFile::Space(s) => assert_eq!(s.opens(), t.opens()),
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn subset_order_listing() {
    let s = FiniteTopSpace::sierpinski();
    let text = write_subset_order(&interval_order(&s).unwrap());
    assert!(text.lines().all(|l| l.starts_with("rel {")));
    assert!(text.contains("rel {x} {x,y}"), "{text}");
}

proptest! {
    #[test]
    fn random_poset_round_trip(seed in any::<u64>(), n in 0usize..9) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.3);
        let back = parse_poset(&write_poset(&p), "x").unwrap();
        prop_assert_eq!(back.strict_pairs(), p.strict_pairs());
    }
}
