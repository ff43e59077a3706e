//! Filters on posets: classification, enumeration and extension.
//!
//! Filters are nonempty. On a finite poset every filter has a least element
//! and is the principal upset of it, so maximal and unbounded filters are
//! exactly the upsets of minimal elements.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::generated::GeneratedPoset;
use crate::poset::{ElemSet, FinitePoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("element index {0} is not in the poset")]
    UnknownElement(usize),
    #[error("{0} is not a filter")]
    NotAFilter(String),
    #[error("chain is not descending at position {0}")]
    NotDescending(usize),
}

/// A filter on a finite poset, stored as its member set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: ElemSet,
}

impl Filter {
    /// Wraps `members` after checking the filter axioms.
    pub fn new(poset: &FinitePoset, members: ElemSet) -> Result<Self, FilterError> {
        check_members(poset, &members)?;
        if !is_filter(poset, &members) {
            return Err(FilterError::NotAFilter(poset.format_set(&members)));
        }
        Ok(Self { members })
    }

    /// The principal filter `↑m`.
    pub fn principal(poset: &FinitePoset, m: usize) -> Self {
        Self {
            members: poset.up_set(m),
        }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn into_members(self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The least member; always present for a filter on a finite poset.
    pub fn generator(&self, poset: &FinitePoset) -> usize {
        *self
            .members
            .iter()
            .find(|&&m| self.members.iter().all(|&q| poset.le(m, q)))
            .expect("finite filters are principal")
    }

    pub fn display<'a>(&'a self, poset: &'a FinitePoset) -> impl fmt::Display + 'a {
        DisplaySet(poset, &self.members)
    }
}

struct DisplaySet<'a>(&'a FinitePoset, &'a ElemSet);

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_set(self.1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    All,
    Unbounded,
    Maximal,
}

impl FromStr for FilterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "unbounded" => Ok(Self::Unbounded),
            "maximal" => Ok(Self::Maximal),
            other => Err(format!("unknown filter kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterClass {
    pub is_filter: bool,
    pub is_unbounded: bool,
    pub is_maximal: bool,
}

fn check_members(poset: &FinitePoset, set: &ElemSet) -> Result<(), FilterError> {
    match set.iter().find(|&&p| p >= poset.len()) {
        Some(&p) => Err(FilterError::UnknownElement(p)),
        None => Ok(()),
    }
}

/// Nonempty, upward closed, and downward directed within itself.
pub fn is_filter(poset: &FinitePoset, set: &ElemSet) -> bool {
    if set.is_empty() {
        return false;
    }
    for &p in set {
        for q in 0..poset.len() {
            if poset.le(p, q) && !set.contains(&q) {
                return false;
            }
        }
    }
    set.iter().all(|&p| {
        set.iter()
            .all(|&q| set.iter().any(|&r| poset.le(r, p) && poset.le(r, q)))
    })
}

/// No element of the poset lies strictly below every member.
pub fn is_unbounded(poset: &FinitePoset, set: &ElemSet) -> bool {
    !(0..poset.len()).any(|r| set.iter().all(|&q| poset.lt(r, q)))
}

/// Maximality by the generator criterion: a filter is maximal iff its least
/// element is minimal in the poset.
pub fn is_maximal_by_generator(poset: &FinitePoset, set: &ElemSet) -> bool {
    if !is_filter(poset, set) {
        return false;
    }
    let generator = Filter {
        members: set.clone(),
    }
    .generator(poset);
    poset.is_minimal(generator)
}

/// Maximality by brute force: no proper superset is a filter.
///
/// Exponential in the number of non-members; meant for cross-checks on
/// small posets.
pub fn is_maximal_by_supersets(poset: &FinitePoset, set: &ElemSet) -> bool {
    if !is_filter(poset, set) {
        return false;
    }
    let outside: Vec<usize> = (0..poset.len()).filter(|p| !set.contains(p)).collect();
    assert!(outside.len() < 24, "superset search too large");
    for mask in 1u32..(1u32 << outside.len()) {
        let mut bigger = set.clone();
        for (bit, &p) in outside.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                bigger.insert(p);
            }
        }
        if is_filter(poset, &bigger) {
            return false;
        }
    }
    true
}

pub fn classify_filter(poset: &FinitePoset, set: &ElemSet) -> Result<FilterClass, FilterError> {
    check_members(poset, set)?;
    let is_filter = is_filter(poset, set);
    Ok(FilterClass {
        is_filter,
        is_unbounded: is_filter && is_unbounded(poset, set),
        is_maximal: is_filter && is_maximal_by_generator(poset, set),
    })
}

/// All filters of the requested kind, ordered by generator.
pub fn enumerate_filters(poset: &FinitePoset, kind: FilterKind) -> Vec<Filter> {
    (0..poset.len())
        .filter(|&m| match kind {
            FilterKind::All => true,
            // ↑m is unbounded iff nothing lies strictly below m, which is
            // also the maximality criterion
            FilterKind::Unbounded | FilterKind::Maximal => poset.is_minimal(m),
        })
        .map(|m| Filter::principal(poset, m))
        .collect()
}

/// Extends a filter to a maximal one, choosing the least eligible minimal
/// element in element order.
pub fn extend_to_maximal(poset: &FinitePoset, filter: &ElemSet) -> Result<Filter, FilterError> {
    check_members(poset, filter)?;
    if !is_filter(poset, filter) {
        return Err(FilterError::NotAFilter(poset.format_set(filter)));
    }
    let generator = Filter {
        members: filter.clone(),
    }
    .generator(poset);
    let m = (0..poset.len())
        .find(|&m| poset.is_minimal(m) && poset.le(m, generator))
        .expect("finite posets have minimal elements below every element");
    Ok(Filter::principal(poset, m))
}

pub fn upward_closure(poset: &FinitePoset, set: &ElemSet) -> Result<ElemSet, FilterError> {
    check_members(poset, set)?;
    Ok((0..poset.len())
        .filter(|&q| set.iter().any(|&p| poset.le(p, q)))
        .collect())
}

/// The filter generated by a weakly descending chain in a lazy poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFilter<E> {
    chain: Vec<E>,
}

impl<E: Clone + Eq + std::hash::Hash + fmt::Debug> ChainFilter<E> {
    pub fn new<G: GeneratedPoset<Elem = E>>(poset: &G, chain: Vec<E>) -> Result<Self, FilterError> {
        for (i, w) in chain.windows(2).enumerate() {
            if !poset.leq(&w[1], &w[0]) {
                return Err(FilterError::NotDescending(i + 1));
            }
        }
        Ok(Self { chain })
    }

    pub fn chain(&self) -> &[E] {
        &self.chain
    }

    pub fn last(&self) -> Option<&E> {
        self.chain.last()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Membership in the generated filter: some generator lies below `e`.
    pub fn contains<G: GeneratedPoset<Elem = E>>(&self, poset: &G, e: &E) -> bool {
        self.chain.iter().any(|g| poset.leq(g, e))
    }

    /// Appends a generator, which must lie below the current last one.
    pub fn push<G: GeneratedPoset<Elem = E>>(&mut self, poset: &G, e: E) -> Result<(), FilterError> {
        if let Some(last) = self.chain.last() {
            if !poset.leq(&e, last) {
                return Err(FilterError::NotDescending(self.chain.len()));
            }
        }
        self.chain.push(e);
        Ok(())
    }

    /// Extends by the first strict refinement of the last generator found
    /// within `budget`; returns whether the chain grew.
    pub fn refine<G: GeneratedPoset<Elem = E>>(&mut self, poset: &G, budget: usize) -> bool {
        let Some(last) = self.chain.last() else {
            return false;
        };
        match poset.refinements(last, budget).into_iter().next() {
            Some(next) => {
                self.chain.push(next);
                true
            }
            None => false,
        }
    }

    pub fn display<G: GeneratedPoset<Elem = E>>(&self, poset: &G) -> String {
        let codes: Vec<String> = self.chain.iter().map(|e| poset.encode(e)).collect();
        codes.join(" ⪰ ")
    }
}
