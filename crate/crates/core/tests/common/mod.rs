//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's filter or topology code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use poset_spaces::poset::{ElemSet, FinitePoset};

pub fn subsets(n: usize) -> Vec<ElemSet> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

pub fn is_filter(p: &FinitePoset, s: &ElemSet) -> bool {
    let n = p.len();
    let up = s
        .iter()
        .all(|&a| (0..n).all(|b| !p.le(a, b) || s.contains(&b)));
    let directed = s
        .iter()
        .all(|&a| s.iter().all(|&b| s.iter().any(|&c| p.le(c, a) && p.le(c, b))));
    !s.is_empty() && up && directed
}

/// Every filter, found by testing all `2^n` subsets.
pub fn filters(p: &FinitePoset) -> Vec<ElemSet> {
    subsets(p.len()).into_iter().filter(|s| is_filter(p, s)).collect()
}

pub fn maximal_filters(p: &FinitePoset) -> Vec<ElemSet> {
    let all = filters(p);
    all.iter()
        .filter(|f| !all.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect()
}

/// No element outside the filter lies below all of its members.
pub fn is_unbounded(p: &FinitePoset, f: &ElemSet) -> bool {
    !(0..p.len()).any(|l| !f.contains(&l) && f.iter().all(|&m| p.le(l, m)))
}

pub fn unbounded_filters(p: &FinitePoset) -> Vec<ElemSet> {
    filters(p).into_iter().filter(|f| is_unbounded(p, f)).collect()
}

/// Basic opens `N_p` over a list of points.
pub fn basic_opens(p: &FinitePoset, points: &[ElemSet]) -> Vec<BTreeSet<usize>> {
    (0..p.len())
        .map(|e| (0..points.len()).filter(|&i| points[i].contains(&e)).collect())
        .collect()
}

pub fn t0(opens: &[BTreeSet<usize>], n: usize) -> bool {
    (0..n).all(|a| {
        ((a + 1)..n).all(|b| opens.iter().any(|o| o.contains(&a) != o.contains(&b)))
    })
}

pub fn t1(opens: &[BTreeSet<usize>], n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| a == b || opens.iter().any(|o| o.contains(&a) && !o.contains(&b)))
    })
}

/// All unions of the given sets, including the empty union.
pub fn generated_opens(n_points: usize, basics: &[BTreeSet<usize>]) -> BTreeSet<BTreeSet<usize>> {
    let mut closed: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    closed.insert(BTreeSet::new());
    closed.insert((0..n_points).collect());
    let mut frontier: Vec<BTreeSet<usize>> = basics.to_vec();
    // finite intersections first
    loop {
        let mut grew = false;
        let current: Vec<_> = frontier.clone();
        for a in &current {
            for b in &current {
                let c: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !frontier.contains(&c) {
                    frontier.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    for b in frontier {
        let existing: Vec<_> = closed.iter().cloned().collect();
        for e in existing {
            closed.insert(e.union(&b).copied().collect());
        }
        closed.insert(b);
    }
    closed
}

/// Star game value: the most rounds player I can force from `p` when II
/// always takes the shorter branch. Recursion on height; both elements of an
/// incompatible pair below `p` are strictly below it.
pub fn star_rounds(p: &FinitePoset) -> Vec<usize> {
    fn go(p: &FinitePoset, e: usize, memo: &mut BTreeMap<usize, usize>) -> usize {
        if let Some(&v) = memo.get(&e) {
            return v;
        }
        let below: Vec<usize> = (0..p.len()).filter(|&q| p.le(q, e)).collect();
        let mut best = 0;
        for &a in &below {
            for &b in &below {
                let compatible = (0..p.len()).any(|c| p.le(c, a) && p.le(c, b));
                if a < b && !compatible {
                    assert!(a != e && b != e);
                    let v = 1 + go(p, a, memo).min(go(p, b, memo));
                    best = best.max(v);
                }
            }
        }
        memo.insert(e, best);
        best
    }
    let mut memo = BTreeMap::new();
    (0..p.len()).map(|e| go(p, e, &mut memo)).collect()
}
