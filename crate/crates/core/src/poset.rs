//! Finite partial orders.
//!
//! A [`FinitePoset`] keeps its elements in input order and stores the order
//! relation as a dense boolean matrix. Every enumeration in the crate walks
//! elements in that order, which keeps reports and tie-breaking deterministic.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// A set of element indices of one poset.
pub type ElemSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("invalid element id {0:?}: ids must be nonempty and contain no whitespace")]
    InvalidElementId(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("order pair mentions undeclared element {0}")]
    UnknownElementInPair(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("antisymmetry violated: {0} and {1} lie below each other")]
    AntisymmetryViolation(String, String),
    #[error("strict order contains the reflexive pair ({0}, {0})")]
    IrreflexivityViolation(String),
}

fn check_id(id: &str) -> Result<(), PosetError> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(PosetError::InvalidElementId(id.to_string()));
    }
    Ok(())
}

/// A partial order on finitely many named elements.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    // row-major: le[a * n + b] is true iff a ⪯ b
    le: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from element ids and (possibly Hasse-style) order pairs.
    ///
    /// The pairs are closed reflexively and transitively; the closure must be
    /// antisymmetric.
    pub fn validate<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        pairs: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = build_index(&names)?;
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| PosetError::UnknownElementInPair(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| PosetError::UnknownElementInPair(b.as_ref().to_string()))?;
            idx_pairs.push((ia, ib));
        }
        Self::close(name.to_string(), names, index, &idx_pairs)
    }

    /// Builds a poset over `elements` from index pairs, closing as [`validate`](Self::validate) does.
    pub fn from_index_pairs(
        name: &str,
        elements: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let index = build_index(&elements)?;
        for &(a, b) in pairs {
            assert!(a < elements.len() && b < elements.len(), "pair index out of range");
        }
        Self::close(name.to_string(), elements, index, pairs)
    }

    /// Builds a poset from a relation predicate, closing it reflexively and transitively.
    pub fn from_relation(
        name: &str,
        elements: Vec<String>,
        le: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_index_pairs(name, elements, &pairs)
    }

    /// Converts a strict order (irreflexive pairs) into the associated non-strict poset.
    pub fn from_strict<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        strict: &[(S, S)],
    ) -> Result<Self, PosetError> {
        for (a, b) in strict {
            if a.as_ref() == b.as_ref() {
                return Err(PosetError::IrreflexivityViolation(a.as_ref().to_string()));
            }
        }
        Self::validate(name, elements, strict)
    }

    fn close(
        name: String,
        elements: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in pairs {
            le[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if le[a * n + b] && le[b * n + a] {
                    return Err(PosetError::AntisymmetryViolation(
                        elements[a].clone(),
                        elements[b].clone(),
                    ));
                }
            }
        }
        Ok(Self {
            name,
            elements,
            index,
            le,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    /// Resolves a list of ids into an element set.
    pub fn set_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElemSet, PosetError> {
        ids.iter().map(|id| self.index_of(id.as_ref())).collect()
    }

    pub fn all(&self) -> ElemSet {
        (0..self.len()).collect()
    }

    /// `a ⪯ b`
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    /// `a ≺ b`
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// `p ⊥ q`: no element lies below both.
    pub fn incompatible(&self, p: usize, q: usize) -> bool {
        !(0..self.len()).any(|r| self.le(r, p) && self.le(r, q))
    }

    pub fn incompatible_ids(&self, p: &str, q: &str) -> Result<bool, PosetError> {
        Ok(self.incompatible(self.index_of(p)?, self.index_of(q)?))
    }

    /// Least common lower bound in element order, if any.
    pub fn common_lower_bound(&self, p: usize, q: usize) -> Option<usize> {
        (0..self.len()).find(|&r| self.le(r, p) && self.le(r, q))
    }

    pub fn up_set(&self, p: usize) -> ElemSet {
        (0..self.len()).filter(|&q| self.le(p, q)).collect()
    }

    pub fn down_set(&self, p: usize) -> ElemSet {
        (0..self.len()).filter(|&q| self.le(q, p)).collect()
    }

    pub fn strictly_below(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&q| self.lt(q, p))
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        self.strictly_below(p).next().is_none()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_minimal(p)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| !(0..self.len()).any(|q| self.lt(p, q)))
            .collect()
    }

    pub fn greatest_element(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|p| self.le(p, t)))
    }

    /// Pairs `(a, b)` with `a ≺ b`, in element order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The strict order as pairs of ids (the inverse of [`from_strict`](Self::from_strict)).
    pub fn strict_pair_ids(&self) -> Vec<(String, String)> {
        self.strict_pairs()
            .into_iter()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    /// Covering pairs of the order (its Hasse diagram).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// The order dual: `a ⪯ᵈ b` iff `b ⪯ a`.
    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = self.le(b, a);
            }
        }
        FinitePoset {
            name: format!("{}^op", self.name),
            elements: self.elements.clone(),
            index: self.index.clone(),
            le,
        }
    }

    /// The subposet on `subset`, keeping element names and relative order.
    ///
    /// Returns the subposet and, for each of its elements, the index in `self`.
    pub fn induced(&self, subset: &ElemSet) -> (FinitePoset, Vec<usize>) {
        let embed: Vec<usize> = subset.iter().copied().collect();
        let m = embed.len();
        let mut le = vec![false; m * m];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                le[i * m + j] = self.le(a, b);
            }
        }
        let elements: Vec<String> = embed.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let sub = FinitePoset {
            name: format!("{}|sub", self.name),
            elements,
            index,
            le,
        };
        (sub, embed)
    }

    /// Brute-force check of reflexivity, antisymmetry and transitivity.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.len();
        for p in 0..n {
            if !self.le(p, p) {
                return false;
            }
            for q in 0..n {
                if p != q && self.le(p, q) && self.le(q, p) {
                    return false;
                }
                for r in 0..n {
                    if self.le(p, q) && self.le(q, r) && !self.le(p, r) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Renders an element set as a brace list in element order, e.g. `{a, c}`.
    pub fn format_set(&self, set: &ElemSet) -> String {
        let names: Vec<&str> = set.iter().map(|&i| self.element(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        check_id(n)?;
        if index.insert(n.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("name", &self.name)
            .field("elements", &self.elements)
            .field("covers", &covers)
            .finish()
    }
}

/// Small named posets used throughout the tests and examples.
pub mod samples {
    use super::FinitePoset;

    /// `x ≺ y`
    pub fn chain2() -> FinitePoset {
        FinitePoset::validate("chain2", &["x", "y"], &[("x", "y")]).unwrap()
    }

    /// `a ⪯ c`, `b ⪯ c`
    pub fn vee() -> FinitePoset {
        FinitePoset::validate("vee", &["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap()
    }

    pub fn antichain2() -> FinitePoset {
        FinitePoset::validate::<&str>("antichain2", &["a", "b"], &[]).unwrap()
    }

    pub fn singleton() -> FinitePoset {
        FinitePoset::validate::<&str>("one", &["a"], &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn singleton_closure_is_reflexive() {
        let p = FinitePoset::validate::<&str>("one", &["a"], &[]).unwrap();
        assert!(p.le(0, 0));
        assert_eq!(p.strict_pairs(), vec![]);
    }

    #[test]
    fn chain2_closure() {
        let p = chain2();
        assert!(p.le(0, 0) && p.le(1, 1) && p.le(0, 1));
        assert!(!p.le(1, 0));
    }

    #[test]
    fn transitive_closure_of_hasse_input() {
        let p = FinitePoset::validate("c3", &["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn antisymmetry_violation() {
        let err = FinitePoset::validate("bad", &["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert_eq!(
            err,
            PosetError::AntisymmetryViolation("p".into(), "q".into())
        );
    }

    #[test]
    fn cycle_through_closure_is_rejected() {
        let err = FinitePoset::validate(
            "bad",
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap_err();
        assert!(matches!(err, PosetError::AntisymmetryViolation(_, _)));
    }

    #[test]
    fn duplicate_and_unknown_elements() {
        assert_eq!(
            FinitePoset::validate::<&str>("d", &["a", "a"], &[]).unwrap_err(),
            PosetError::DuplicateElement("a".into())
        );
        assert_eq!(
            FinitePoset::validate("u", &["x"], &[("x", "z")]).unwrap_err(),
            PosetError::UnknownElementInPair("z".into())
        );
        assert!(matches!(
            FinitePoset::validate::<&str>("w", &["a b"], &[]).unwrap_err(),
            PosetError::InvalidElementId(_)
        ));
    }

    #[test]
    fn incompatibility_examples() {
        let v = vee();
        assert!(v.incompatible_ids("a", "b").unwrap());
        assert!(!v.incompatible_ids("a", "c").unwrap());
        let c = chain2();
        assert!(!c.incompatible_ids("x", "y").unwrap());
        assert_eq!(c.common_lower_bound(0, 1), Some(0));
        for p in 0..v.len() {
            assert!(!v.incompatible(p, p));
        }
        assert!(matches!(
            v.incompatible_ids("a", "zz"),
            Err(PosetError::UnknownElement(_))
        ));
    }

    #[test]
    fn strict_conversion_examples() {
        let from_strict = FinitePoset::from_strict("c", &["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(from_strict.strict_pairs(), chain2().strict_pairs());
        assert_eq!(
            chain2().strict_pair_ids(),
            vec![("x".to_string(), "y".to_string())]
        );
        let anti = FinitePoset::from_strict::<&str>("a", &["a", "b"], &[]).unwrap();
        assert_eq!(anti.strict_pairs(), antichain2().strict_pairs());
        assert_eq!(
            FinitePoset::from_strict("r", &["p"], &[("p", "p")]).unwrap_err(),
            PosetError::IrreflexivityViolation("p".into())
        );
    }

    #[test]
    fn dual_is_an_involution() {
        let v = vee();
        let dd = v.dual().dual();
        assert_eq!(dd.strict_pairs(), v.strict_pairs());
        assert!(v.dual().le(2, 0));
    }

    #[test]
    fn induced_subposet_keeps_order() {
        let v = vee();
        let (sub, embed) = v.induced(&[0, 2].into_iter().collect());
        assert_eq!(embed, vec![0, 2]);
        assert_eq!(sub.elements(), &["a".to_string(), "c".to_string()]);
        assert!(sub.lt(0, 1));
    }

    #[test]
    fn extremal_elements() {
        let v = vee();
        assert_eq!(v.minimal_elements(), vec![0, 1]);
        assert_eq!(v.greatest_element(), Some(2));
        assert_eq!(antichain2().greatest_element(), None);
        assert_eq!(v.format_set(&[0, 2].into_iter().collect()), "{a, c}");
    }
}
