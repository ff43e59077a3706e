//! Lazily enumerable partial orders.
//!
//! Infinite posets cannot be stored, only explored. A [`GeneratedPoset`]
//! exposes a decision procedure for the order and a budgeted enumeration of
//! strict refinements. Implementations must keep `refinements(a, b)` a subset
//! of `refinements(a, b + 1)`, so that bounded searches are repeatable.

use std::fmt;
use std::hash::Hash;

use crate::poset::FinitePoset;

pub trait GeneratedPoset {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn encode(&self, e: &Self::Elem) -> String;

    fn decode(&self, code: &str) -> Option<Self::Elem>;

    /// `a ⪯ b`
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Elements strictly below `a` reachable within `budget`.
    fn refinements(&self, a: &Self::Elem, budget: usize) -> Vec<Self::Elem>;

    /// A finite seed set of elements.
    fn roots(&self) -> Vec<Self::Elem>;

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    /// `a ⊥ b`, decided by searching for a common lower bound among the
    /// refinements of `a` available within `budget`. Implementations with an
    /// exact test override this.
    fn incompatible(&self, a: &Self::Elem, b: &Self::Elem, budget: usize) -> bool {
        if self.leq(a, b) || self.leq(b, a) {
            return false;
        }
        !self
            .refinements(a, budget)
            .iter()
            .any(|r| self.leq(r, b))
    }
}

/// Finite binary strings ordered by reverse prefix: longer strings are smaller.
///
/// `s ⪯ t` iff `t` is a prefix of `s`. Two strings are incompatible exactly
/// when neither extends the other.
#[derive(Debug, Clone, Copy, Default)]
pub struct BinaryTree;

impl BinaryTree {
    pub fn parse(code: &str) -> Option<Vec<bool>> {
        if code == "ε" {
            return Some(Vec::new());
        }
        code.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect()
    }

    pub fn is_prefix(prefix: &[bool], s: &[bool]) -> bool {
        prefix.len() <= s.len() && s[..prefix.len()] == *prefix
    }
}

impl GeneratedPoset for BinaryTree {
    type Elem = Vec<bool>;

    fn encode(&self, e: &Vec<bool>) -> String {
        if e.is_empty() {
            return "ε".to_string();
        }
        e.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    fn decode(&self, code: &str) -> Option<Vec<bool>> {
        Self::parse(code)
    }

    fn leq(&self, a: &Vec<bool>, b: &Vec<bool>) -> bool {
        Self::is_prefix(b, a)
    }

    /// All proper extensions of `a` by at most `budget + 1` bits, shortest first.
    fn refinements(&self, a: &Vec<bool>, budget: usize) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        let mut frontier = vec![a.clone()];
        for _ in 0..=budget {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for s in &frontier {
                for bit in [false, true] {
                    let mut t = s.clone();
                    t.push(bit);
                    next.push(t);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn roots(&self) -> Vec<Vec<bool>> {
        vec![Vec::new()]
    }

    fn incompatible(&self, a: &Vec<bool>, b: &Vec<bool>, _budget: usize) -> bool {
        !Self::is_prefix(a, b) && !Self::is_prefix(b, a)
    }
}

/// A finite poset seen through the [`GeneratedPoset`] interface.
///
/// Refinements ignore the budget: every strictly smaller element is listed.
#[derive(Debug, Clone, Copy)]
pub struct FiniteView<'a>(pub &'a FinitePoset);

impl GeneratedPoset for FiniteView<'_> {
    type Elem = usize;

    fn encode(&self, e: &usize) -> String {
        self.0.element(*e).to_string()
    }

    fn decode(&self, code: &str) -> Option<usize> {
        self.0.index_of(code).ok()
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.0.le(*a, *b)
    }

    fn refinements(&self, a: &usize, _budget: usize) -> Vec<usize> {
        self.0.strictly_below(*a).collect()
    }

    fn roots(&self) -> Vec<usize> {
        self.0.maximal_elements()
    }

    fn incompatible(&self, a: &usize, b: &usize, _budget: usize) -> bool {
        self.0.incompatible(*a, *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples;

    #[test]
    fn bintree_order_and_codes() {
        let t = BinaryTree;
        let s = t.decode("01").unwrap();
        let u = t.decode("0").unwrap();
        assert!(t.leq(&s, &u));
        assert!(!t.leq(&u, &s));
        assert!(t.leq(&s, &Vec::new()));
        assert_eq!(t.encode(&Vec::new()), "ε");
        assert_eq!(t.decode("ε"), Some(vec![]));
        assert_eq!(t.decode("012"), None);
        assert!(t.incompatible(&t.decode("00").unwrap(), &t.decode("01").unwrap(), 0));
        assert!(!t.incompatible(&s, &u, 0));
    }

    #[test]
    fn bintree_refinements_are_monotone_and_strict() {
        let t = BinaryTree;
        let root = t.decode("1").unwrap();
        for b in 0..4 {
            let small = t.refinements(&root, b);
            let big = t.refinements(&root, b + 1);
            assert!(small.iter().all(|x| big.contains(x)));
            assert!(small.iter().all(|x| t.lt(x, &root)));
            assert_eq!(small.len(), (1 << (b + 2)) - 2);
        }
    }

    #[test]
    fn default_incompatibility_search_matches_exact_on_finite_view() {
        let v = samples::vee();
        let view = FiniteView(&v);
        struct Plain<'a>(FiniteView<'a>);
        impl GeneratedPoset for Plain<'_> {
            type Elem = usize;
            fn encode(&self, e: &usize) -> String {
                self.0.encode(e)
            }
            fn decode(&self, c: &str) -> Option<usize> {
                self.0.decode(c)
            }
            fn leq(&self, a: &usize, b: &usize) -> bool {
                self.0.leq(a, b)
            }
            fn refinements(&self, a: &usize, budget: usize) -> Vec<usize> {
                self.0.refinements(a, budget)
            }
            fn roots(&self) -> Vec<usize> {
                self.0.roots()
            }
        }
        let plain = Plain(view);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(plain.incompatible(&a, &b, 0), v.incompatible(a, b));
            }
        }
        assert_eq!(view.roots(), vec![2]);
    }
}
