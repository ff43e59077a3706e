mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_spaces::enumerate::{for_each_poset, random_poset};
use poset_spaces::filters::{
    classify_filter, enumerate_filters, extend_to_maximal, is_maximal_by_generator, is_maximal_by_supersets,
    upward_closure, FilterError, FilterKind,
};
use poset_spaces::poset::samples::{chain2, vee};
use poset_spaces::poset::{ElemSet, FinitePoset};

fn members(p: &FinitePoset, kind: FilterKind) -> Vec<ElemSet> {
    enumerate_filters(p, kind).into_iter().map(|f| f.into_members()).collect()
}

#[test]
fn classify_examples() {
    let c = chain2();
    let y = classify_filter(&c, &c.set_of(&["y"]).unwrap()).unwrap();
    assert!(y.is_filter && !y.is_unbounded && !y.is_maximal);
    let xy = classify_filter(&c, &c.all()).unwrap();
    assert!(xy.is_filter && xy.is_unbounded && xy.is_maximal);
    let v = vee();
    assert!(!classify_filter(&v, &v.all()).unwrap().is_filter);
    assert_eq!(
        classify_filter(&v, &[7].into_iter().collect()).unwrap_err(),
        FilterError::UnknownElement(7)
    );
}

#[test]
fn enumerate_examples() {
    let v = vee();
    let max = members(&v, FilterKind::Maximal);
    assert_eq!(max, vec![v.set_of(&["a", "c"]).unwrap(), v.set_of(&["b", "c"]).unwrap()]);
    let mut oracle = common::maximal_filters(&v);
    oracle.sort();
    assert_eq!(max, oracle);
    let c = chain2();
    assert_eq!(members(&c, FilterKind::All), vec![c.all(), c.set_of(&["y"]).unwrap()]);
}

#[test]
fn extension_examples() {
    let c = chain2();
    assert_eq!(extend_to_maximal(&c, &c.set_of(&["y"]).unwrap()).unwrap().members(), &c.all());
    let v = vee();
    let ext = extend_to_maximal(&v, &v.set_of(&["c"]).unwrap()).unwrap();
    assert_eq!(ext.members(), &v.set_of(&["a", "c"]).unwrap());
    assert!(matches!(extend_to_maximal(&v, &v.all()), Err(FilterError::NotAFilter(_))));
    assert_eq!(upward_closure(&c, &c.set_of(&["x"]).unwrap()).unwrap(), c.all());
    assert_eq!(upward_closure(&v, &v.set_of(&["c"]).unwrap()).unwrap(), v.set_of(&["c"]).unwrap());
}

#[test]
fn maximal_criteria_agree_and_maximal_is_unbounded() {
    for n in 0..=5 {
        for_each_poset(n, |p| {
            for f in common::filters(p) {
                assert_eq!(is_maximal_by_generator(p, &f), is_maximal_by_supersets(p, &f));
            }
            let max = members(p, FilterKind::Maximal);
            assert_eq!(max, members(p, FilterKind::Unbounded));
            assert!(max.iter().all(|f| common::is_unbounded(p, f)));
        });
    }
}

proptest! {
    #[test]
    fn extension_is_maximal_superset(seed in any::<u64>(), n in 1usize..8) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.35);
        let max = members(&p, FilterKind::Maximal);
        for f in enumerate_filters(&p, FilterKind::All) {
            let m = extend_to_maximal(&p, f.members()).unwrap();
            prop_assert!(f.members().is_subset(m.members()));
            prop_assert!(max.contains(m.members()));
        }
        for f in &max {
            let m = extend_to_maximal(&p, f).unwrap();
            prop_assert_eq!(m.members(), f);
        }
    }

    #[test]
    fn upward_closure_is_idempotent(seed in any::<u64>(), n in 1usize..8, mask in any::<u32>()) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.35);
        let s: ElemSet = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let up = upward_closure(&p, &s).unwrap();
        prop_assert!(s.is_subset(&up));
        prop_assert_eq!(upward_closure(&p, &up).unwrap(), up);
    }
}
