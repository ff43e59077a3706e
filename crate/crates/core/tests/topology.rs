mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_spaces::enumerate::random_poset;
use poset_spaces::poset::samples::{chain2, singleton, vee};
use poset_spaces::topology::{
    reduce_countable_subposet, restriction_homeomorphism_check, separation_check, Mode, PosetSpace, TopologyError,
};

#[test]
fn basic_open_examples() {
    let v = PosetSpace::new(vee(), Mode::Mf);
    assert_eq!(v.basic_open_id("c").unwrap(), v.whole());
    let a = v.basic_open_id("a").unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(v.point_name(*a.iter().next().unwrap()), "↑a");
    let c = PosetSpace::new(chain2(), Mode::Mf);
    assert_eq!(c.basic_open_id("y").unwrap(), c.whole());
    assert!(v.basic_open_id("zz").is_err());
}

#[test]
fn separation_examples() {
    let c = separation_check(&PosetSpace::new(chain2(), Mode::Uf));
    assert!(c.t0 && c.t1 && c.uf_equals_mf);
    let one = separation_check(&PosetSpace::new(singleton(), Mode::Mf));
    assert!(one.t0 && one.t1);
}

#[test]
fn reduction_examples() {
    let v = vee();
    let seed = v.set_of(&["a", "b"]).unwrap();
    let r = reduce_countable_subposet(&v, &seed, None).unwrap();
    assert!(seed.is_subset(&r.subset) && r.stabilized && r.report.ok);
    let (sub, _) = v.induced(&r.subset);
    assert_eq!(common::maximal_filters(&sub).len(), 2);

    let all = reduce_countable_subposet(&v, &v.all(), None).unwrap();
    assert_eq!(all.subset, v.all());

    let c = chain2();
    let x = c.set_of(&["x"]).unwrap();
    let r = reduce_countable_subposet(&c, &x, None).unwrap();
    assert_eq!(r.subset, x);
    assert!(r.report.ok);

    assert!(matches!(
        reduce_countable_subposet(&v, &v.set_of(&["c"]).unwrap(), None),
        Err(TopologyError::NotABasis(_))
    ));
}

#[test]
fn restriction_examples() {
    let v = vee();
    assert!(!restriction_homeomorphism_check(&v, &v.set_of(&["c"]).unwrap()).ok);
    assert!(restriction_homeomorphism_check(&v, &v.all()).ok);
}

proptest! {
    #[test]
    fn reduction_passes_restriction_check(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4);
        let r = reduce_countable_subposet(&p, &p.all(), None).unwrap();
        prop_assert!(r.report.ok);
        prop_assert!(restriction_homeomorphism_check(&p, &r.subset).ok);
        // minimal elements alone form a basis for a finite MF space
        let mins = p.minimal_elements().into_iter().collect();
        let r = reduce_countable_subposet(&p, &mins, None).unwrap();
        prop_assert!(r.report.ok);
    }

    #[test]
    fn basic_opens_are_monotone(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4);
        for mode in [Mode::Mf, Mode::Uf] {
            let s = PosetSpace::new(p.clone(), mode);
            for a in 0..n {
                for b in 0..n {
                    if p.le(a, b) {
                        prop_assert!(s.basic_open(a).is_subset(&s.basic_open(b)));
                    }
                }
            }
        }
    }
}
