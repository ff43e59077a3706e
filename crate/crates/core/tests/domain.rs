mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_spaces::domain::{
    directed_subsets, filter_completion, ideal_completion, is_directed, scott_max_homeomorphism_check, Dcpo,
    DomainError,
};
use poset_spaces::enumerate::{all_posets_up_to, random_poset};
use poset_spaces::poset::samples::{antichain2, chain2, singleton, vee};
use poset_spaces::poset::FinitePoset;

#[test]
fn way_below_examples() {
    let a = Dcpo::new(antichain2()).unwrap();
    assert!(a.way_below(0, 0) && !a.way_below(0, 1));
    let c = Dcpo::new(chain2()).unwrap();
    assert!(c.way_below(0, 1) && c.way_below(1, 1));
    assert_eq!(c.way_below_set(1), chain2().all());
    assert_eq!(c.way_above_set(1).len(), 1);
}

#[test]
fn every_finite_poset_is_an_algebraic_dcpo() {
    for p in all_posets_up_to(5) {
        let d = Dcpo::new(p.clone()).unwrap();
        assert!(d.way_below_equals_order());
        let class = d.classify();
        assert!(class.is_continuous && class.is_algebraic);
        assert_eq!(class.compact_elements, p.all());
        assert_eq!(class.minimal_basis, p.all());
    }
}

#[test]
fn directed_subsets_have_maxima() {
    let v = vee();
    let ds = directed_subsets(&v);
    // singletons, {a,c}, {b,c}, {a,b,c}
    assert_eq!(ds.len(), 6);
    for d in &ds {
        assert!(d.iter().any(|&m| d.iter().all(|&x| v.le(x, m))));
    }
    assert!(!is_directed(&v, &v.set_of(&["a", "b"]).unwrap()));
    assert!(!is_directed(&v, &Default::default()));
}

#[test]
fn completion_examples() {
    let c = filter_completion(&chain2());
    assert_eq!(c.dcpo.len(), 2);
    assert_eq!(c.dcpo.compact_elements().len(), 2);
    let v = filter_completion(&vee());
    let class = v.dcpo.classify();
    assert_eq!(class.compact_elements.len(), 3);
    assert_eq!(v.dcpo.maximal_elements().len(), 2);
    assert_eq!(ideal_completion(&chain2()).dcpo.len(), 2);
    let one = Dcpo::new(singleton()).unwrap();
    assert_eq!(one.classify().minimal_basis, singleton().all());
}

#[test]
fn completion_carrier_matches_brute_force() {
    for p in all_posets_up_to(4) {
        let c = filter_completion(&p);
        let mut lib: Vec<_> = c.filters.iter().map(|f| f.members().clone()).collect();
        lib.sort();
        let mut oracle = common::filters(&p);
        oracle.sort();
        assert_eq!(lib, oracle);
        for i in 0..c.dcpo.len() {
            for j in 0..c.dcpo.len() {
                let incl = c.filters[i].members().is_subset(c.filters[j].members());
                assert_eq!(c.dcpo.poset().le(i, j), incl);
            }
        }
    }
}

#[test]
fn ideal_completion_is_dual_filter_completion() {
    for p in all_posets_up_to(4) {
        let a = ideal_completion(&p);
        let b = filter_completion(&p.dual());
        assert_eq!(a.dcpo.poset().strict_pairs(), b.dcpo.poset().strict_pairs());
        let round = filter_completion(&p.dual().dual());
        assert_eq!(round.dcpo.poset().strict_pairs(), filter_completion(&p).dcpo.poset().strict_pairs());
    }
}

#[test]
fn lack_of_sup_is_reported() {
    // a directed set {c} always has sup c; a pair below two incomparable
    // upper bounds is not directed, so every finite poset is a dcpo
    let p = FinitePoset::validate("w", &["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        .unwrap();
    assert!(Dcpo::new(p).is_ok());
    let err = DomainError::NotDirectedComplete("{a}".into());
    assert_eq!(err.to_string(), "directed set {a} has no least upper bound");
}

#[test]
fn scott_examples() {
    let r = scott_max_homeomorphism_check(&vee());
    assert!(r.families_match && r.ok());
    assert_eq!(r.table.len(), 2);
    assert!(scott_max_homeomorphism_check(&chain2()).ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn scott_topology_matches_mf(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4);
        prop_assert!(scott_max_homeomorphism_check(&p).ok());
    }
}
