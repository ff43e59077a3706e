mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_spaces::enumerate::{all_posets, random_poset};
use poset_spaces::poset::samples::{antichain2, chain2, vee};
use poset_spaces::poset::{FinitePoset, PosetError};

fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max, any::<u64>(), 0.0f64..1.0).prop_map(|(n, seed, density)| {
        random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

#[test]
fn validate_closes_the_relation() {
    let a = FinitePoset::validate::<&str>("one", &["a"], &[]).unwrap();
    assert!(a.le(0, 0));
    let c = FinitePoset::validate("chain2", &["x", "y"], &[("x", "y")]).unwrap();
    assert_eq!(c, chain2());
    let chain3 = FinitePoset::validate("c3", &["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert!(chain3.le(0, 2));
}

#[test]
fn validate_rejects_bad_input() {
    assert_eq!(
        FinitePoset::validate("bad", &["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err(),
        PosetError::AntisymmetryViolation("p".into(), "q".into())
    );
    assert_eq!(
        FinitePoset::validate::<&str>("dup", &["a", "a"], &[]).unwrap_err(),
        PosetError::DuplicateElement("a".into())
    );
    assert_eq!(
        FinitePoset::validate("unk", &["a"], &[("a", "b")]).unwrap_err(),
        PosetError::UnknownElementInPair("b".into())
    );
}

#[test]
fn incompatibility_examples() {
    let v = vee();
    assert!(v.incompatible_ids("a", "b").unwrap());
    assert!(!chain2().incompatible_ids("x", "y").unwrap());
    assert!(matches!(v.incompatible_ids("a", "z"), Err(PosetError::UnknownElement(_))));
}

#[test]
fn strict_round_trip() {
    let c = FinitePoset::from_strict("chain2", &["x", "y"], &[("x", "y")]).unwrap();
    assert_eq!(c, chain2());
    assert_eq!(chain2().strict_pair_ids(), vec![("x".to_string(), "y".to_string())]);
    assert_eq!(FinitePoset::from_strict::<&str>("antichain2", &["a", "b"], &[]).unwrap(), antichain2());
    assert_eq!(
        FinitePoset::from_strict("bad", &["p"], &[("p", "p")]).unwrap_err(),
        PosetError::IrreflexivityViolation("p".into())
    );
}

#[test]
fn strict_round_trip_is_identity_up_to_four() {
    for n in 0..=4 {
        for p in all_posets(n) {
            let ids = p.strict_pair_ids();
            let back = FinitePoset::from_strict(p.name(), p.elements(), &ids).unwrap();
            assert_eq!(back.strict_pairs(), p.strict_pairs());
        }
    }
}

proptest! {
    #[test]
    fn order_axioms_hold(p in arb_poset(8)) {
        let n = p.len();
        for a in 0..n {
            prop_assert!(p.le(a, a));
            for b in 0..n {
                prop_assert!(!(p.le(a, b) && p.le(b, a)) || a == b);
                for c in 0..n {
                    prop_assert!(!(p.le(a, b) && p.le(b, c)) || p.le(a, c));
                }
            }
        }
    }

    #[test]
    fn incompatibility_is_symmetric_and_irreflexive(p in arb_poset(8)) {
        for a in 0..p.len() {
            prop_assert!(!p.incompatible(a, a));
            for b in 0..p.len() {
                prop_assert_eq!(p.incompatible(a, b), p.incompatible(b, a));
                let oracle = !(0..p.len()).any(|r| p.le(r, a) && p.le(r, b));
                prop_assert_eq!(p.incompatible(a, b), oracle);
            }
        }
    }

    #[test]
    fn dual_is_an_involution(p in arb_poset(7)) {
        prop_assert_eq!(p.dual().dual().strict_pairs(), p.strict_pairs());
    }
}
